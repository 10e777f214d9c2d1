#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cqd/store.hpp"
#include "cqd/surrogate.hpp"
#include "cqd/target.hpp"

namespace cqd::interp {

struct InterpolateOptions {
  ResonatorType type = ResonatorType::quarter;
  double Z_0 = 50.0;             // feedline, ohm
  double Z_c = 50.0;             // line impedance for the target resonator, ohm
  double claw_window = 0.30;     // resonator filter on claw C_c, relative
  double recalc_fraction = 0.01; // of total C_r
  double trust_lo = 0.5;
  double trust_hi = 2.0;
  double min_ej_ec = 30.0;
};

struct ScaleFactors {
  double s_cross = 1.0;
  double s_claw = 1.0;
  double s_res = 1.0;
  double s_fline = 1.0;
};

enum class WarningKind { low_ej_ec, trust_region, weak_coupling, surrogate_fallback };
std::string_view to_string(WarningKind kind) noexcept;

struct Warning {
  WarningKind kind;
  std::string message;
};

// Circuit the target asks for.
struct RequiredCircuit {
  double E_J = 0.0;
  double E_C = 0.0;
  double C_sigma = 0.0;  // fF
  double C_q = 0.0;
  double C_c = 0.0;
  double C_r = 0.0;
};

struct InterpolatedDesign {
  std::string base_qubit_id;
  std::string base_resonator_id;
  std::optional<std::string> base_coupler_id;
  Geometry base_geometry;
  Geometry geometry;
  ScaleFactors scale;
  RequiredCircuit required;
  HamiltonianParams target;
  HamiltonianParams estimated;
  std::vector<Warning> warnings;
  bool recalc_applied = false;
  double recalc_residual = 0.0;  // f_est / f_target - 1 after the length correction
  SurrogateModel surrogate;

  bool has_warning(WarningKind kind) const;
};

// Length-scaling interpolation toward a complete target:
//  1. E_J, E_C from (f_q, alpha); C_sigma, C_c, C_q from E_C and g.
//  2. Warn when E_J/E_C is below min_ej_ec.
//  3. Pick the qubit-claw closest in (alpha, g) at the target E_J and resonator.
//  4. cross *= alpha_sim/alpha, claw *= (alpha_sim/alpha)(g/g_sim).
//  5. Keep resonators whose claw C_c is strictly within claw_window of the
//     scaled claw's C_c.
//  6. Pick the resonator closest in (f_r, kappa).
//  7. length *= f_selected / f_target.
//  8. feedline dimension *= sqrt(kappa_target / kappa_selected).
//  9. If C_rf or C_c moved by more than recalc_fraction of C_r (or the
//     distributed section by that fraction of the length), re-estimate f_r
//     and rescale the length once.
// 10. Estimate parameters through the surrogate.
// Throws Error(infeasible_target) when E_J cannot be derived or no resonator
// survives the filter, Error(empty_store) without qubits or resonators of
// the requested type.
InterpolatedDesign interpolate_design(const db::ComponentStore& store, const query::TargetSpec& target,
                                      const InterpolateOptions& options = {});

// Parameters of an interpolated design at a given E_J.
HamiltonianParams estimate_params(const InterpolatedDesign& design, const SurrogateModel& surrogate, double E_J);

// Step 4: s_cross = alpha_sim/alpha, s_claw = s_cross (g/g_sim).
ScaleFactors qubit_scale(double alpha_sim, double alpha_target, double g_sim, double g_target);

// Step 5 predicate: |C_c_res - C_c_ref| / C_c_ref < window, strictly.
bool within_claw_window(double C_c_res, double C_c_ref, double window);

// Step 9 predicate.
bool needs_length_recalc(double dC_rf, double dC_c, double C_r, double d_dim, double cpw_length,
                         CouplingKind kind, double fraction);

nlohmann::json to_json(const InterpolatedDesign& design);

}  // namespace cqd::interp
