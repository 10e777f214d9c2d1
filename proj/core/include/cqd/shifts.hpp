#pragma once

namespace cqd::physics {

// Detunings closer than this to a pole are treated as degenerate.
inline constexpr double kDegenerateTolerance = 1e-9;  // GHz

struct DispersiveShifts {
  double chi_L = 0.0;  // Lamb shift, GHz
  double chi = 0.0;    // full ground/excited resonator shift, GHz
};

// Second-order shifts including counter-rotating terms:
//   chi_L = g^2/Delta - g^2/Sigma
//   chi   = 2 g^2 (alpha/(Delta(Delta - alpha)) + alpha/(Sigma(Sigma + alpha)))
// Throws degenerate_detuning when Delta = 0, Delta = alpha or Sigma = -alpha.
DispersiveShifts perturbative_shifts(double g, double f_q, double f_r, double alpha);

// Same shifts with the counter-rotating (Sigma) terms dropped.
DispersiveShifts rwa_shifts(double g, double f_q, double f_r, double alpha);

// Coupling from a measured Lamb shift, inverting chi_L = g^2 (1/Delta - 1/Sigma).
double g_from_lamb(double chi_L, double f_q, double f_r);

// RWA estimate g = sqrt(chi_L Delta), kept for comparison with g_from_lamb.
double g_rwa_from_lamb(double chi_L, double f_q, double f_r);

}  // namespace cqd::physics
