#pragma once

#include <span>
#include <vector>

#include "cqd/types.hpp"

namespace cqd::physics {

// Flux-tuned SQUID transmon frequency f_max (cos^2 phi + d^2 sin^2 phi)^(1/4).
double flux_tuned_fq(double phi, double f_max, double d);

struct Branches {
  double upper = 0.0;
  double lower = 0.0;
};

// Normal modes of a qubit at f_qubit coupled with strength g to a resonator
// at f_r, including counter-rotating terms:
//   [sqrt((f_r + f_q)^2 + 4g^2) +/- sqrt((f_r - f_q)^2 + 4g^2)] / 2
Branches avoided_crossing_branches(double f_qubit, double f_r, double g);

struct FluxPoint {
  double phi = 0.0;         // rad
  double f_observed = 0.0;  // GHz
};

struct FitOptions {
  bool fix_f_max = false;
  bool fix_d = false;
  int max_iterations = 500;
};

struct FitResult {
  TunableCouplerParams params;
  TunableCouplerParams std_errors;  // zero for fixed parameters
  double rms_residual = 0.0;        // GHz
  int iterations = 0;
};

// Levenberg-Marquardt fit of avoided_crossing_branches(flux_tuned_fq(phi)) to
// resonator spectroscopy. Each point is matched to whichever branch is nearer
// its observed frequency; the assignment is redone every iteration.
FitResult fit_avoided_crossing(std::span<const FluxPoint> points,
                               const TunableCouplerParams& initial_guess,
                               const FitOptions& options = {});

// alpha = omega_02 - 2 omega_01 with omega_02 = 2 f_two_photon.
double alpha_from_spectroscopy(double f_01, double f_two_photon);

}  // namespace cqd::physics
