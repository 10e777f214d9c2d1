#include "cqd/surrogate.hpp"

#include <cmath>
#include <limits>
#include <tuple>

#include "cqd/compose.hpp"
#include "cqd/constants.hpp"
#include "cqd/error.hpp"

namespace cqd::interp {

namespace {

// Index minimizing (tier, distance, id) over accepted entries, or npos.
// tier ranks how closely the other coordinates match the base.
template <typename Entries, typename Accept, typename Rank>
std::size_t nearest(const Entries& entries, Accept accept, Rank rank) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::tuple<int, double, std::string_view> best_key{};
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!accept(entries[i])) continue;
    const auto [tier, dist] = rank(entries[i]);
    const std::tuple<int, double, std::string_view> key{tier, dist, entries[i].id};
    if (best == std::numeric_limits<std::size_t>::max() || key < best_key) {
      best = i;
      best_key = key;
    }
  }
  return best;
}

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

double feedline_capacitance_of(const db::ResonatorEntry& r, double Z_0) {
  if (r.coupling_kind == CouplingKind::lumped) return r.results.C_rf.value_or(0.0);
  const double C_r = db::resonator_capacitance(r.results.f_bare, r.Z_c, r.res_type);
  return distributed_feedline_capacitance(r.results.f_bare, C_r, r.results.kappa.value_or(0.0), Z_0);
}

}  // namespace

double distributed_feedline_capacitance(double f, double C_r, double kappa, double Z_0) {
  if (!(f > 0.0) || !(C_r > 0.0) || !(kappa >= 0.0) || !(Z_0 > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "feedline inversion needs f > 0, C_r > 0, kappa >= 0, Z_0 > 0");
  }
  const double w = units::angular_from_ghz(f);
  const double k = kappa * units::mega * units::two_pi;
  const double a = 0.5 * Z_0 * w * w;
  const double Cr = C_r * units::femto;
  // a C^2 - k C - k C_r = 0
  const double C = (k + std::sqrt(k * k + 4.0 * a * k * Cr)) / (2.0 * a);
  return C / units::femto;
}

double distributed_kappa(double f, double C_r, double C_rf, double Z_0) {
  const double w = units::angular_from_ghz(f);
  const double C = C_rf * units::femto;
  return units::mhz_from_angular(0.5 * Z_0 * w * w * C * C / (C_r * units::femto + C));
}

SurrogateModel build_surrogate(const db::ComponentStore& store, std::size_t qi, std::size_t ri,
                               std::optional<std::size_t> ci, double Z_0) {
  const auto& qubits = store.qubits();
  const auto& resonators = store.resonators();
  const auto& couplers = store.couplers();
  if (qi >= qubits.size() || ri >= resonators.size() || (ci && *ci >= couplers.size())) {
    throw Error(ErrorCode::invalid_argument, "surrogate base index out of range");
  }
  const auto& q = qubits[qi];
  const auto& r = resonators[ri];

  SurrogateModel m;
  m.type = r.res_type;
  m.kind = r.coupling_kind;
  m.uses_coupler = ci.has_value();
  m.Z_c = r.Z_c;
  m.Z_0 = Z_0;
  m.base.cross_length = q.geometry.cross_length;
  m.base.claw_length = q.geometry.claw_length;
  m.base.cpw_length = r.geometry.cpw_length;
  m.base.feedline_coupling_dim = ci ? couplers[*ci].geometry.finger_dim : r.geometry.feedline_coupling_dim;
  m.C_q = q.cmatrix.C_q;
  m.C_c = q.cmatrix.C_c;
  m.f_bare = r.results.f_bare;
  m.kappa = r.results.kappa.value_or(0.0);
  if (ci) {
    m.C_rf = couplers[*ci].cmatrix.C_rf;
    m.C_cg = couplers[*ci].cmatrix.C_cg;
  } else {
    m.C_rf = feedline_capacitance_of(r, Z_0);
    m.C_cg = r.results.C_cg.value_or(0.0);
  }

  // dC_q / d cross_length
  {
    const auto j = nearest(
        qubits, [&](const auto& e) { return e.geometry.cross_length != q.geometry.cross_length; },
        [&](const auto& e) {
          return std::pair{e.geometry.claw_length == q.geometry.claw_length ? 0 : 1,
                           std::abs(e.geometry.cross_length - q.geometry.cross_length)};
        });
    if (j != npos) {
      m.dCq_dcross = (qubits[j].cmatrix.C_q - q.cmatrix.C_q) / (qubits[j].geometry.cross_length - q.geometry.cross_length);
    } else {
      m.dCq_dcross = q.cmatrix.C_q / q.geometry.cross_length;
      m.fallbacks.emplace_back("cross_length");
    }
  }
  // dC_c / d claw_length
  {
    const auto j = nearest(
        qubits, [&](const auto& e) { return e.geometry.claw_length != q.geometry.claw_length; },
        [&](const auto& e) {
          return std::pair{e.geometry.cross_length == q.geometry.cross_length ? 0 : 1,
                           std::abs(e.geometry.claw_length - q.geometry.claw_length)};
        });
    if (j != npos) {
      m.dCc_dclaw = (qubits[j].cmatrix.C_c - q.cmatrix.C_c) / (qubits[j].geometry.claw_length - q.geometry.claw_length);
    } else {
      m.dCc_dclaw = q.cmatrix.C_c / q.geometry.claw_length;
      m.fallbacks.emplace_back("claw_length");
    }
  }
  m.C_c_res = claw_capacitance(store, m, r.geometry.claw_length);

  auto same_family = [&](const db::ResonatorEntry& e) {
    return e.res_type == r.res_type && e.coupling_kind == r.coupling_kind;
  };
  // d f_bare / d cpw_length, preferring neighbors with the same claw and dim
  {
    const auto j = nearest(
        resonators,
        [&](const auto& e) { return same_family(e) && e.geometry.cpw_length != r.geometry.cpw_length; },
        [&](const auto& e) {
          const bool claw = e.geometry.claw_length == r.geometry.claw_length;
          const bool dim = e.geometry.feedline_coupling_dim == r.geometry.feedline_coupling_dim;
          return std::pair{claw && dim ? 0 : claw ? 1 : 2, std::abs(e.geometry.cpw_length - r.geometry.cpw_length)};
        });
    if (j != npos) {
      m.df_dlen = (resonators[j].results.f_bare - r.results.f_bare) /
                  (resonators[j].geometry.cpw_length - r.geometry.cpw_length);
    } else {
      m.df_dlen = -r.results.f_bare / r.geometry.cpw_length;
      m.fallbacks.emplace_back("cpw_length");
    }
  }
  // dC_rf / d dim (and dC_cg / d dim)
  if (ci) {
    const auto& c = couplers[*ci];
    const auto j = nearest(
        couplers, [&](const auto& e) { return e.geometry.finger_dim != c.geometry.finger_dim; },
        [&](const auto& e) { return std::pair{0, std::abs(e.geometry.finger_dim - c.geometry.finger_dim)}; });
    if (j != npos) {
      const double dd = couplers[j].geometry.finger_dim - c.geometry.finger_dim;
      m.dCrf_ddim = (couplers[j].cmatrix.C_rf - c.cmatrix.C_rf) / dd;
      m.dCcg_ddim = (couplers[j].cmatrix.C_cg - c.cmatrix.C_cg) / dd;
    } else {
      m.dCrf_ddim = c.cmatrix.C_rf / c.geometry.finger_dim;
      m.fallbacks.emplace_back("finger_dim");
    }
  } else {
    const auto j = nearest(
        resonators,
        [&](const auto& e) {
          return same_family(e) && e.geometry.feedline_coupling_dim != r.geometry.feedline_coupling_dim;
        },
        [&](const auto& e) {
          const bool len = e.geometry.cpw_length == r.geometry.cpw_length;
          const bool claw = e.geometry.claw_length == r.geometry.claw_length;
          return std::pair{len && claw ? 0 : len ? 1 : 2,
                           std::abs(e.geometry.feedline_coupling_dim - r.geometry.feedline_coupling_dim)};
        });
    if (j != npos) {
      const auto& n = resonators[j];
      const double dd = n.geometry.feedline_coupling_dim - r.geometry.feedline_coupling_dim;
      m.dCrf_ddim = (feedline_capacitance_of(n, Z_0) - m.C_rf) / dd;
      if (r.coupling_kind == CouplingKind::lumped) {
        m.dCcg_ddim = (n.results.C_cg.value_or(0.0) - m.C_cg) / dd;
      }
    } else {
      m.dCrf_ddim = m.C_rf / r.geometry.feedline_coupling_dim;
      m.fallbacks.emplace_back("feedline_coupling_dim");
    }
  }

  for (const double s : {m.dCq_dcross, m.dCc_dclaw, m.df_dlen, m.dCrf_ddim, m.dCcg_ddim}) {
    if (!std::isfinite(s)) throw Error(ErrorCode::degenerate_data, "surrogate sensitivity is not finite");
  }
  return m;
}

double claw_capacitance(const db::ComponentStore& store, const SurrogateModel& model, double claw_length) {
  const long g = store.find_group(claw_length);
  if (g >= 0) {
    const auto& members = store.claw_groups()[static_cast<std::size_t>(g)].qubits;
    if (!members.empty()) {
      double sum = 0.0;
      for (const auto i : members) sum += store.qubits()[i].cmatrix.C_c;
      return sum / static_cast<double>(members.size());
    }
  }
  return model.C_c + model.dCc_dclaw * (claw_length - model.base.claw_length);
}

SurrogateEstimate estimate(const SurrogateModel& m, const Geometry& g, double E_J) {
  SurrogateEstimate out;
  out.C_q = m.C_q + m.dCq_dcross * (g.cross_length - m.base.cross_length);
  out.C_c = m.C_c + m.dCc_dclaw * (g.claw_length - m.base.claw_length);
  const double d_dim = g.feedline_coupling_dim - m.base.feedline_coupling_dim;
  out.C_rf = m.C_rf + m.dCrf_ddim * d_dim;
  out.C_cg = m.C_cg + m.dCcg_ddim * d_dim;
  if (!(out.C_q > 0.0) || !(out.C_c > 0.0) || !(out.C_rf > 0.0) || out.C_cg < 0.0) {
    throw Error(ErrorCode::invalid_argument, "scaled geometry leaves the physical range of the surrogate");
  }
  const double f_lin = m.f_bare + m.df_dlen * (g.cpw_length - m.base.cpw_length);
  if (!(f_lin > 0.0)) throw Error(ErrorCode::invalid_argument, "scaled resonator length gives f <= 0");

  // Claw (and distributed feedline section) loading relative to the
  // simulated resonator.
  const double C_lin = db::resonator_capacitance(f_lin, m.Z_c, m.type);
  double before = C_lin + m.C_c_res;
  double after = C_lin + out.C_c;
  if (m.kind == CouplingKind::distributed) {
    before += m.C_rf;
    after += out.C_rf;
  }
  out.f_bare = f_lin * std::sqrt(before / after);
  out.C_r = db::resonator_capacitance(out.f_bare, m.Z_c, m.type);

  const auto qc = db::qubit_circuit(out.C_q, out.C_c, E_J);
  db::ResonatorCircuit rc;
  if (m.kind == CouplingKind::distributed) {
    rc = db::distributed_circuit(out.f_bare, distributed_kappa(out.f_bare, out.C_r, out.C_rf, m.Z_0), out.C_r);
  } else {
    rc = db::lumped_circuit(out.f_bare, out.C_r, out.C_rf, out.C_cg, m.Z_0);
  }
  out.params = db::hamiltonian(qc, rc, E_J);
  return out;
}

}  // namespace cqd::interp
