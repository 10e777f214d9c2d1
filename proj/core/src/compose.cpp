#include "cqd/compose.hpp"

#include <algorithm>
#include <cmath>

#include "cqd/circuit.hpp"
#include "cqd/error.hpp"

namespace cqd::db {

QubitCircuit qubit_circuit(double C_q, double C_c, double E_J) {
  QubitCircuit q;
  q.C_sigma = C_q + C_c;
  q.C_c = C_c;
  q.E_C = physics::charging_energy(q.C_sigma);
  q.spectrum = physics::transmon_fq_alpha(E_J, q.E_C);
  return q;
}

double resonator_capacitance(double f_bare, double Z_c, ResonatorType type) {
  return physics::resonator_effective_capacitance(f_bare, Z_c, type);
}

ResonatorCircuit distributed_circuit(double f_bare, double kappa, double C_r) {
  if (!(f_bare > 0.0) || !(kappa >= 0.0) || !(C_r > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "distributed resonator needs f_bare > 0, kappa >= 0, C_r > 0");
  }
  return {f_bare, kappa, C_r};
}

ResonatorCircuit lumped_circuit(double f_bare, double C_r, double C_rf, double C_cg, double Z_0) {
  const auto loaded = physics::coupled_res_freq_and_kappa(f_bare, C_r, C_rf, C_cg, Z_0);
  return {loaded.f_r, loaded.kappa, C_r};
}

HamiltonianParams hamiltonian(const QubitCircuit& q, const ResonatorCircuit& r, double E_J) {
  HamiltonianParams p;
  p.f_q = q.spectrum.f_q;
  p.alpha = q.spectrum.alpha;
  p.f_r = r.f_r;
  p.kappa = r.kappa;
  p.g = physics::coupling_g_capacitive(q.C_c, q.C_sigma, r.C_r, r.f_r, E_J, q.E_C);
  return p;
}

bool claw_match(double a, double b, double tolerance) {
  if (tolerance == 0.0) return a == b;
  return std::abs(a - b) <= tolerance * std::max(std::abs(a), std::abs(b));
}

namespace {

std::vector<std::vector<std::size_t>> group_matches(const ComponentStore& store, double tolerance) {
  const auto& groups = store.claw_groups();
  // Matching resonator groups per group position.
  std::vector<std::vector<std::size_t>> per_group(groups.size());
  for (std::size_t a = 0; a < groups.size(); ++a) {
    if (groups[a].qubits.empty()) continue;
    if (tolerance == 0.0) {
      if (!groups[a].resonators.empty()) per_group[a].push_back(a);
      continue;
    }
    for (std::size_t b = 0; b < groups.size(); ++b) {
      if (!groups[b].resonators.empty() && claw_match(groups[a].claw_length, groups[b].claw_length, tolerance)) {
        per_group[a].push_back(b);
      }
    }
  }
  std::vector<std::vector<std::size_t>> out(store.qubits().size());
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (const std::size_t qi : groups[a].qubits) out[qi] = per_group[a];
  }
  return out;
}

void check_tolerance(double tolerance) {
  if (!(tolerance >= 0.0 && tolerance < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "claw_tolerance must lie in [0, 1)");
  }
}

}  // namespace

CandidateComposer::CandidateComposer(const ComponentStore& store, ComposeOptions options)
    : store_(&store), options_(options) {
  if (!(options_.E_J > 0.0)) throw Error(ErrorCode::invalid_argument, "E_J must be > 0");
  if (!(options_.Z_0 > 0.0)) throw Error(ErrorCode::invalid_argument, "Z_0 must be > 0");
  check_tolerance(options_.claw_tolerance);

  qubits_.resize(store.qubits().size());
  for (std::size_t i = 0; i < qubits_.size(); ++i) {
    const auto& cm = store.qubits()[i].cmatrix;
    try {
      qubits_[i].circuit = qubit_circuit(cm.C_q, cm.C_c, options_.E_J);
      qubits_[i].ok = true;
    } catch (const Error& e) {
      qubits_[i].error = e.what();
    }
  }
  resonators_.resize(store.resonators().size());
  for (std::size_t j = 0; j < resonators_.size(); ++j) {
    const auto& r = store.resonators()[j];
    try {
      resonators_[j].C_r = resonator_capacitance(r.results.f_bare, r.Z_c, r.res_type);
      resonators_[j].ok = true;
    } catch (const Error& e) {
      resonators_[j].error = e.what();
    }
  }
  matches_ = group_matches(store, options_.claw_tolerance);
}

std::size_t CandidateComposer::candidates_for_qubit(std::size_t i) const {
  const std::size_t per_lumped = std::max<std::size_t>(1, store_->couplers().size());
  std::size_t n = 0;
  for (const std::size_t gi : matches_[i]) {
    for (const std::size_t ri : store_->claw_groups()[gi].resonators) {
      n += store_->resonators()[ri].coupling_kind == CouplingKind::lumped ? per_lumped : 1;
    }
  }
  return n;
}

bool CandidateComposer::make(std::size_t qi, std::size_t ri, std::size_t ci, CandidateDesign& out) const {
  const auto& qs = qubits_[qi];
  const auto& rs = resonators_[ri];
  if (!qs.ok || !rs.ok) return false;
  const auto& res = store_->resonators()[ri];
  try {
    ResonatorCircuit rc;
    if (res.coupling_kind == CouplingKind::distributed) {
      rc = distributed_circuit(res.results.f_bare, res.results.kappa.value_or(0.0), rs.C_r);
    } else if (ci != kNoCoupler) {
      const auto& cm = store_->couplers()[ci].cmatrix;
      rc = lumped_circuit(res.results.f_bare, rs.C_r, cm.C_rf, cm.C_cg, options_.Z_0);
    } else {
      rc = lumped_circuit(res.results.f_bare, rs.C_r, res.results.C_rf.value_or(0.0),
                          res.results.C_cg.value_or(0.0), options_.Z_0);
    }
    out.params = hamiltonian(qs.circuit, rc, options_.E_J);
  } catch (const Error&) {
    return false;
  }
  out.qubit = qi;
  out.resonator = ri;
  out.coupler = ci;
  out.qubit_id = store_->qubits()[qi].id;
  out.resonator_id = res.id;
  out.coupler_id = ci == kNoCoupler ? std::string_view{} : std::string_view{store_->couplers()[ci].id};
  out.E_J = options_.E_J;
  out.cost = 0.0;
  return true;
}

std::size_t enumerate_count(const ComponentStore& store, double claw_tolerance) {
  check_tolerance(claw_tolerance);
  const std::size_t per_lumped = std::max<std::size_t>(1, store.couplers().size());
  std::size_t n = 0;
  for (const auto& q : store.qubits()) {
    for (const auto& r : store.resonators()) {
      if (!claw_match(q.geometry.claw_length, r.geometry.claw_length, claw_tolerance)) continue;
      n += r.coupling_kind == CouplingKind::lumped ? per_lumped : 1;
    }
  }
  return n;
}

}  // namespace cqd::db
