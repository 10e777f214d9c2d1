#include "cqd/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "cqd/circuit.hpp"
#include "cqd/compose.hpp"
#include "cqd/error.hpp"
#include "cqd/search.hpp"
#include "cqd/transmon.hpp"

namespace cqd::interp {

using nlohmann::json;

namespace {

constexpr double kHullSlack = 1e-9;

struct Bounds {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool contains(double v) const {
    const double slack = kHullSlack * std::max(std::abs(lo), std::abs(hi));
    return v >= lo - slack && v <= hi + slack;
  }
};

double weight_or_one(const query::ResolvedTarget& rt, query::Term a, query::Term b, query::Term which) {
  const double wa = rt.weight[static_cast<std::size_t>(a)];
  const double wb = rt.weight[static_cast<std::size_t>(b)];
  if (wa == 0.0 && wb == 0.0) return 1.0;
  return rt.weight[static_cast<std::size_t>(which)];
}

double rel2(double target, double value) {
  const double r = (target - value) / target;
  return r * r;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string_view to_string(WarningKind kind) noexcept {
  switch (kind) {
    case WarningKind::low_ej_ec: return "low_ej_ec";
    case WarningKind::trust_region: return "trust_region";
    case WarningKind::weak_coupling: return "weak_coupling";
    case WarningKind::surrogate_fallback: return "surrogate_fallback";
  }
  return "?";
}

bool InterpolatedDesign::has_warning(WarningKind kind) const {
  return std::any_of(warnings.begin(), warnings.end(), [kind](const Warning& w) { return w.kind == kind; });
}

bool needs_length_recalc(double dC_rf, double dC_c, double C_r, double d_dim, double cpw_length, CouplingKind kind,
                         double fraction) {
  const double limit = fraction * C_r;
  if (std::abs(dC_rf) > limit || std::abs(dC_c) > limit) return true;
  return kind == CouplingKind::distributed && std::abs(d_dim) > fraction * cpw_length;
}

ScaleFactors qubit_scale(double alpha_sim, double alpha_target, double g_sim, double g_target) {
  ScaleFactors s;
  s.s_cross = alpha_sim / alpha_target;
  s.s_claw = s.s_cross * (g_target / g_sim);
  return s;
}

bool within_claw_window(double C_c_res, double C_c_ref, double window) {
  return std::abs(C_c_res - C_c_ref) / C_c_ref < window;
}

HamiltonianParams estimate_params(const InterpolatedDesign& design, const SurrogateModel& surrogate, double E_J) {
  return estimate(surrogate, design.geometry, E_J).params;
}

InterpolatedDesign interpolate_design(const db::ComponentStore& store, const query::TargetSpec& spec,
                                      const InterpolateOptions& opt) {
  if (!spec.complete()) {
    throw Error(ErrorCode::invalid_argument, "interpolation needs all of f_q, alpha, f_r, kappa, g");
  }
  const query::ResolvedTarget rt = query::resolve(spec);
  const HamiltonianParams t = spec.params();
  if (!(t.f_r > 0.0) || !(t.kappa > 0.0) || !(t.g > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "targets f_r, kappa and g must be > 0");
  }

  const auto& qubits = store.qubits();
  const auto& resonators = store.resonators();
  if (qubits.empty()) throw Error(ErrorCode::empty_store, "store holds no qubit-claw entries");
  if (std::none_of(resonators.begin(), resonators.end(), [&](const auto& r) { return r.res_type == opt.type; })) {
    throw Error(ErrorCode::empty_store, "store holds no " + std::string(cqd::to_string(opt.type)) + "-wave resonators");
  }

  InterpolatedDesign d;
  d.target = t;

  // 1. Required circuit.
  physics::JosephsonCharging jc;
  try {
    jc = physics::find_ej_ec(t.f_q, t.alpha);
  } catch (const Error& e) {
    throw Error(ErrorCode::infeasible_target, std::string("cannot derive E_J, E_C: ") + e.what());
  }
  auto& req = d.required;
  req.E_J = jc.E_J;
  req.E_C = jc.E_C;
  req.C_sigma = physics::capacitance_of(jc.E_C);
  req.C_r = physics::resonator_effective_capacitance(t.f_r, opt.Z_c, opt.type);
  const double g_per_fF = physics::coupling_g_capacitive(1.0, req.C_sigma, req.C_r, t.f_r, jc.E_J, jc.E_C);
  req.C_c = t.g / g_per_fF;
  req.C_q = req.C_sigma - req.C_c;

  // 2. Transmon regime.
  const double ratio = jc.E_J / jc.E_C;
  if (ratio < opt.min_ej_ec) {
    d.warnings.push_back({WarningKind::low_ej_ec, "E_J/E_C = " + fmt(ratio) + " is below " + fmt(opt.min_ej_ec) +
                                                      "; charge dispersion may matter"});
  }

  // 3. Qubit-claw closest in (alpha, g).
  const double w_alpha = weight_or_one(rt, query::Term::alpha, query::Term::g, query::Term::alpha);
  const double w_g = weight_or_one(rt, query::Term::alpha, query::Term::g, query::Term::g);
  std::size_t best_q = qubits.size();
  std::tuple<double, std::string_view> best_q_key{};
  double alpha_sim = 0.0;
  double g_sim = 0.0;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    const auto& cm = qubits[i].cmatrix;
    db::QubitCircuit qc;
    double g = 0.0;
    try {
      qc = db::qubit_circuit(cm.C_q, cm.C_c, jc.E_J);
      g = physics::coupling_g_capacitive(cm.C_c, qc.C_sigma, req.C_r, t.f_r, jc.E_J, qc.E_C);
    } catch (const Error&) {
      continue;
    }
    const double c = w_alpha * rel2(t.alpha, qc.spectrum.alpha) + w_g * rel2(t.g, g);
    const std::tuple<double, std::string_view> key{c, qubits[i].id};
    if (best_q == qubits.size() || key < best_q_key) {
      best_q = i;
      best_q_key = key;
      alpha_sim = qc.spectrum.alpha;
      g_sim = g;
    }
  }
  if (best_q == qubits.size()) throw Error(ErrorCode::infeasible_target, "no qubit-claw entry is physical at this E_J");
  const auto& q = qubits[best_q];

  // 4. Cross and claw scaling.
  d.scale = qubit_scale(alpha_sim, t.alpha, g_sim, t.g);

  // Claw capacitance of the scaled claw needs the claw slope, which only
  // depends on the qubit side; any resonator index works for that part.
  const std::size_t any_res = static_cast<std::size_t>(
      std::find_if(resonators.begin(), resonators.end(), [&](const auto& r) { return r.res_type == opt.type; }) -
      resonators.begin());
  const SurrogateModel qubit_side = build_surrogate(store, best_q, any_res, std::nullopt, opt.Z_0);
  const double claw_scaled = q.geometry.claw_length * d.scale.s_claw;
  const double C_c_scaled = q.cmatrix.C_c + qubit_side.dCc_dclaw * (claw_scaled - q.geometry.claw_length);

  // 5 + 6. Filter on claw C_c, then pick the closest resonator in (f_r, kappa).
  const double w_f = weight_or_one(rt, query::Term::f_r, query::Term::kappa, query::Term::f_r);
  const double w_k = weight_or_one(rt, query::Term::f_r, query::Term::kappa, query::Term::kappa);
  struct Pick {
    std::size_t resonator;
    std::optional<std::size_t> coupler;
    double f_r;
    double kappa;
  };
  std::optional<Pick> pick;
  std::tuple<double, std::string_view, std::string_view> pick_key{};
  std::size_t surviving = 0;
  const bool have_couplers = !store.couplers().empty();
  for (std::size_t j = 0; j < resonators.size(); ++j) {
    const auto& r = resonators[j];
    if (r.res_type != opt.type) continue;
    const double C_c_res = claw_capacitance(store, qubit_side, r.geometry.claw_length);
    if (!within_claw_window(C_c_res, C_c_scaled, opt.claw_window)) continue;
    ++surviving;
    auto consider = [&](std::optional<std::size_t> c, double f, double k) {
      const double cost = w_f * rel2(t.f_r, f) + w_k * rel2(t.kappa, k);
      const std::string_view cid = c ? std::string_view(store.couplers()[*c].id) : std::string_view{};
      const std::tuple<double, std::string_view, std::string_view> key{cost, r.id, cid};
      if (!pick || key < pick_key) {
        pick = Pick{j, c, f, k};
        pick_key = key;
      }
    };
    try {
      if (r.coupling_kind == CouplingKind::distributed) {
        consider(std::nullopt, r.results.f_bare, r.results.kappa.value_or(0.0));
      } else {
        const double C_r = db::resonator_capacitance(r.results.f_bare, r.Z_c, r.res_type);
        if (have_couplers) {
          for (std::size_t c = 0; c < store.couplers().size(); ++c) {
            const auto& cm = store.couplers()[c].cmatrix;
            const auto lc = db::lumped_circuit(r.results.f_bare, C_r, cm.C_rf, cm.C_cg, opt.Z_0);
            consider(c, lc.f_r, lc.kappa);
          }
        } else {
          const auto lc = db::lumped_circuit(r.results.f_bare, C_r, r.results.C_rf.value_or(0.0),
                                             r.results.C_cg.value_or(0.0), opt.Z_0);
          consider(std::nullopt, lc.f_r, lc.kappa);
        }
      }
    } catch (const Error&) {
      continue;
    }
  }
  if (!pick) {
    throw Error(ErrorCode::infeasible_target,
                "no " + std::string(cqd::to_string(opt.type)) + "-wave resonator has a claw C_c within " +
                    fmt(100.0 * opt.claw_window) + "% of " + fmt(C_c_scaled) + " fF (" + std::to_string(surviving) +
                    " passed the filter)");
  }
  const auto& r = resonators[pick->resonator];
  d.base_qubit_id = q.id;
  d.base_resonator_id = r.id;
  if (pick->coupler) d.base_coupler_id = store.couplers()[*pick->coupler].id;
  d.surrogate = build_surrogate(store, best_q, pick->resonator, pick->coupler, opt.Z_0);
  const SurrogateModel& m = d.surrogate;
  d.base_geometry = m.base;

  // 7 + 8. Resonator length and feedline coupling.
  d.scale.s_res = pick->f_r / t.f_r;
  d.scale.s_fline = std::sqrt(t.kappa / pick->kappa);
  d.geometry.cross_length = m.base.cross_length * d.scale.s_cross;
  d.geometry.claw_length = claw_scaled;
  d.geometry.cpw_length = m.base.cpw_length * d.scale.s_res;
  d.geometry.feedline_coupling_dim = m.base.feedline_coupling_dim * d.scale.s_fline;

  // 9. Loading changes large enough to move f_r.
  SurrogateEstimate est = estimate(m, d.geometry, jc.E_J);
  const double C_r_sel = db::resonator_capacitance(m.f_bare, m.Z_c, m.type);
  if (needs_length_recalc(est.C_rf - m.C_rf, est.C_c - m.C_c_res, C_r_sel,
                          d.geometry.feedline_coupling_dim - m.base.feedline_coupling_dim, m.base.cpw_length, m.kind,
                          opt.recalc_fraction)) {
    d.recalc_applied = true;
    d.geometry.cpw_length *= est.params.f_r / t.f_r;
    d.scale.s_res = d.geometry.cpw_length / m.base.cpw_length;
    est = estimate(m, d.geometry, jc.E_J);
  }
  d.recalc_residual = est.params.f_r / t.f_r - 1.0;

  // 10. Estimate and trust checks.
  d.estimated = est.params;

  Bounds cross, claw, len, dim;
  for (const auto& e : qubits) {
    cross.add(e.geometry.cross_length);
    claw.add(e.geometry.claw_length);
  }
  for (const auto& e : resonators) {
    if (e.res_type != m.type || e.coupling_kind != m.kind) continue;
    len.add(e.geometry.cpw_length);
    if (!m.uses_coupler) dim.add(e.geometry.feedline_coupling_dim);
  }
  if (m.uses_coupler) {
    for (const auto& c : store.couplers()) dim.add(c.geometry.finger_dim);
  }
  std::vector<std::string> outside;
  const std::pair<const char*, double> scales[] = {{"s_cross", d.scale.s_cross},
                                                   {"s_claw", d.scale.s_claw},
                                                   {"s_res", d.scale.s_res},
                                                   {"s_fline", d.scale.s_fline}};
  for (const auto& [name, s] : scales) {
    if (!(s >= opt.trust_lo && s <= opt.trust_hi)) outside.push_back(std::string(name) + "=" + fmt(s));
  }
  if (!cross.contains(d.geometry.cross_length)) outside.push_back("cross_length=" + fmt(d.geometry.cross_length));
  if (!claw.contains(d.geometry.claw_length)) outside.push_back("claw_length=" + fmt(d.geometry.claw_length));
  if (!len.contains(d.geometry.cpw_length)) outside.push_back("cpw_length=" + fmt(d.geometry.cpw_length));
  if (!dim.contains(d.geometry.feedline_coupling_dim)) {
    outside.push_back("feedline_coupling_dim=" + fmt(d.geometry.feedline_coupling_dim));
  }
  if (!outside.empty()) {
    std::string msg = "outside the stored design range:";
    for (const auto& o : outside) msg += " " + o;
    d.warnings.push_back({WarningKind::trust_region, msg});
  }
  if (physics::outside_weak_coupling(est.C_c, est.C_q, est.C_r)) {
    d.warnings.push_back({WarningKind::weak_coupling, "C_c = " + fmt(est.C_c) + " fF exceeds 20% of min(C_q, C_r)"});
  }
  if (!m.fallbacks.empty()) {
    std::string msg = "no stored neighbor for:";
    for (const auto& f : m.fallbacks) msg += " " + f;
    d.warnings.push_back({WarningKind::surrogate_fallback, msg});
  }
  return d;
}

json to_json(const InterpolatedDesign& d) {
  auto geom = [](const Geometry& g) {
    return json{{"cross_length", g.cross_length},
                {"claw_length", g.claw_length},
                {"cpw_length", g.cpw_length},
                {"feedline_coupling_dim", g.feedline_coupling_dim}};
  };
  json warnings = json::array();
  for (const auto& w : d.warnings) warnings.push_back({{"kind", std::string(to_string(w.kind))}, {"message", w.message}});
  const auto& s = d.surrogate;
  return json{
      {"base_qubit_id", d.base_qubit_id},
      {"base_resonator_id", d.base_resonator_id},
      {"base_coupler_id", d.base_coupler_id ? json(*d.base_coupler_id) : json(nullptr)},
      {"base_geometry", geom(d.base_geometry)},
      {"geometry", geom(d.geometry)},
      {"scale_factors",
       {{"s_cross", d.scale.s_cross}, {"s_claw", d.scale.s_claw}, {"s_res", d.scale.s_res}, {"s_fline", d.scale.s_fline}}},
      {"required",
       {{"E_J", d.required.E_J},
        {"E_C", d.required.E_C},
        {"C_sigma", d.required.C_sigma},
        {"C_q", d.required.C_q},
        {"C_c", d.required.C_c},
        {"C_r", d.required.C_r}}},
      {"target", query::to_json(d.target)},
      {"estimated", query::to_json(d.estimated)},
      {"warnings", std::move(warnings)},
      {"recalc_applied", d.recalc_applied},
      {"recalc_residual", d.recalc_residual},
      {"surrogate",
       {{"dCq_dcross", s.dCq_dcross},
        {"dCc_dclaw", s.dCc_dclaw},
        {"df_dlen", s.df_dlen},
        {"dCrf_ddim", s.dCrf_ddim},
        {"dCcg_ddim", s.dCcg_ddim}}},
  };
}

}  // namespace cqd::interp
