#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cqd/store.hpp"
#include "cqd/types.hpp"

namespace cqd::interp {

struct Geometry {
  double cross_length = 0.0;           // um
  double claw_length = 0.0;            // um
  double cpw_length = 0.0;             // um
  double feedline_coupling_dim = 0.0;  // um; coupler finger when a coupler is used
};

// First-order local model around one base design. Slopes are two-point
// secants toward the nearest stored neighbor in each dimension.
struct SurrogateModel {
  ResonatorType type = ResonatorType::quarter;
  CouplingKind kind = CouplingKind::distributed;
  bool uses_coupler = false;
  Geometry base;

  double C_q = 0.0;       // fF
  double C_c = 0.0;       // fF
  double f_bare = 0.0;    // GHz
  double kappa = 0.0;     // MHz, distributed only
  double C_rf = 0.0;      // fF; effective section capacitance when distributed
  double C_cg = 0.0;      // fF, lumped only
  double C_c_res = 0.0;   // claw capacitance the resonator was simulated with
  double Z_c = 50.0;
  double Z_0 = 50.0;

  double dCq_dcross = 0.0;
  double dCc_dclaw = 0.0;
  double df_dlen = 0.0;
  double dCrf_ddim = 0.0;
  double dCcg_ddim = 0.0;

  // Dimensions where no neighbor existed and a proportional model was used.
  std::vector<std::string> fallbacks;
};

// Builds the local model for qubit `qubit`, resonator `resonator` and
// optionally coupler `coupler` (indices into the store).
SurrogateModel build_surrogate(const db::ComponentStore& store, std::size_t qubit, std::size_t resonator,
                               std::optional<std::size_t> coupler, double Z_0);

// Claw capacitance for a claw length: mean over qubit-claws with exactly that
// length, else the surrogate's linear model.
double claw_capacitance(const db::ComponentStore& store, const SurrogateModel& model, double claw_length);

// Effective feedline capacitance (fF) of a distributed coupling section that
// produces linewidth kappa (MHz) on a resonator with frequency f (GHz) and
// capacitance C_r (fF): the positive root of
//   kappa = (1/2) Z_0 omega^2 C^2 / (C_r + C).
double distributed_feedline_capacitance(double f, double C_r, double kappa, double Z_0);
// Forward form of the same relation, MHz.
double distributed_kappa(double f, double C_r, double C_rf, double Z_0);

struct SurrogateEstimate {
  HamiltonianParams params;
  double C_q = 0.0;
  double C_c = 0.0;
  double C_rf = 0.0;
  double C_cg = 0.0;
  double f_bare = 0.0;  // after claw and feedline loading changes
  double C_r = 0.0;
};

// Scaled geometry -> circuit quantities -> the composition pipeline.
SurrogateEstimate estimate(const SurrogateModel& model, const Geometry& geometry, double E_J);

}  // namespace cqd::interp
