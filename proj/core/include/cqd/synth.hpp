#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "cqd/store.hpp"
#include "cqd/types.hpp"

namespace cqd::db {

// Closed-form geometry -> capacitance/frequency model standing in for
// field-solver output. All trends are monotone by construction.
struct SynthModel {
  double Cq0 = 50.0;          // fF
  double Cq_per_cross = 0.2;  // fF/um
  double Cc0 = 1.0;           // fF
  double Cc_per_claw = 0.05;  // fF/um
  double K_quarter = 3.0e4;   // GHz um, f0 = K / cpw_length
  double K_half = 6.0e4;
  double Crf_per_dim_distributed = 0.05;  // fF/um, effective feedline C
  double Crf_per_dim_lumped = 0.05;       // fF/um
  double Ccg0_lumped = 2.0;               // fF
  double Ccg_per_dim_lumped = 0.02;       // fF/um
  double Crf_per_finger = 0.04;           // fF/um
  double Ccg0_coupler = 1.5;              // fF
  double Ccg_per_finger = 0.01;           // fF/um
  double Z_c = 50.0;                      // ohm
  double Z_0 = 50.0;                      // ohm

  double C_q(double cross_length) const { return Cq0 + Cq_per_cross * cross_length; }
  double C_c(double claw_length) const { return Cc0 + Cc_per_claw * claw_length; }
  double f_unloaded(double cpw_length, ResonatorType type) const;
  double C_rf_distributed(double dim) const { return Crf_per_dim_distributed * dim; }
  double C_rf_lumped(double dim) const { return Crf_per_dim_lumped * dim; }
  double C_cg_lumped(double dim) const { return Ccg0_lumped + Ccg_per_dim_lumped * dim; }
  double C_rf_coupler(double finger) const { return Crf_per_finger * finger; }
  double C_cg_coupler(double finger) const { return Ccg0_coupler + Ccg_per_finger * finger; }

  // Bare frequency including claw loading, and for distributed coupling the
  // feedline section as well. GHz.
  double f_bare(double cpw_length, double claw_length, double dim, ResonatorType type,
                CouplingKind kind) const;
  // Linewidth of a distributed section, MHz:
  //   kappa = (1/2) Z_0 omega^2 C_rf^2 / (C_r + C_rf), C_r from f_bare.
  double kappa_distributed(double f_bare, double dim, ResonatorType type) const;

  nlohmann::json to_json() const;
  static SynthModel from_json(const nlohmann::json& j);
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct SynthGroup {
  double claw_length = 0.0;  // um
  std::size_t qubits = 0;
  std::size_t quarter = 0;   // quarter-wave, distributed
  std::size_t half = 0;      // half-wave, lumped
};

enum class SynthLayout { grid, random };

struct SynthConfig {
  SynthModel model;
  std::vector<SynthGroup> groups;
  std::size_t couplers = 0;
  Range cross_length{100.0, 350.0};
  Range cpw_quarter{3750.0, 5000.0};
  Range cpw_half{7500.0, 10000.0};
  Range feedline_dim{50.0, 200.0};
  Range finger_dim{50.0, 250.0};
  SynthLayout layout = SynthLayout::random;
  bool reference_devices = false;  // append the six measured devices
  std::string preset;              // recorded in the manifest
};

// Named presets: "paper-counts", "bench", "interp", "small".
SynthConfig synth_preset(std::string_view name);
std::vector<std::string> synth_preset_names();

// Deterministic for a given (config, seed). Throws Error(invalid_argument)
// on empty or inverted ranges. Model coefficients go into the manifest.
ComponentStore synth_generate(const SynthConfig& config, std::uint64_t seed);

// Six measured devices (frequencies in GHz, alpha/kappa/chi_L/g in MHz).
std::vector<ValidatedDeviceEntry> reference_devices();

struct SynthGeometry {
  double cross_length = 0.0;
  double claw_length = 0.0;
  double cpw_length = 0.0;
  double feedline_dim = 0.0;
};

// Hamiltonian parameters the generator model assigns to a geometry
// (distributed coupling only), through the composition pipeline.
HamiltonianParams ground_truth(const SynthModel& model, const SynthGeometry& geometry, double E_J,
                               ResonatorType type);

}  // namespace cqd::db
