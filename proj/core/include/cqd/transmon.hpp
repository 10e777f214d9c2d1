#pragma once

#include <vector>

namespace cqd::physics {

inline constexpr int kDefaultChargeCutoff = 30;

// Lowest k eigenvalues (GHz, ascending) of the charge-basis transmon
// Hamiltonian 4 E_C (n - n_g)^2 - E_J cos(phi), n in [-n_cut, n_cut].
std::vector<double> transmon_levels(double E_J, double E_C, double n_g, int n_cut, int k);

struct TransmonSpectrum {
  double f_q = 0.0;    // E_1 - E_0, GHz
  double alpha = 0.0;  // (E_2 - E_1) - (E_1 - E_0), GHz
};

// Exact spectrum at n_g = 0. The charge cutoff starts at kDefaultChargeCutoff
// and doubles until the lowest three levels move by less than 1e-9 relative.
TransmonSpectrum transmon_fq_alpha(double E_J, double E_C);

// Transmon-limit closed form: f_q = sqrt(8 E_J E_C) - E_C, alpha = -E_C.
TransmonSpectrum transmon_fq_alpha_approx(double E_J, double E_C);

struct JosephsonCharging {
  double E_J = 0.0;
  double E_C = 0.0;
  int iterations = 0;
};

// Inverts transmon_fq_alpha with damped Newton (finite-difference Jacobian)
// started from the closed-form inverse. Throws no_convergence after 100
// iterations and invalid_argument when E_J/E_C leaves (1, 1e6).
JosephsonCharging find_ej_ec(double f_q, double alpha);

}  // namespace cqd::physics
