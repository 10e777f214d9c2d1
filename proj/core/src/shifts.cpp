#include "cqd/shifts.hpp"

#include <cmath>

#include "cqd/error.hpp"

namespace cqd::physics {

namespace {

void check_poles(double delta, double sigma, double alpha) {
  if (std::abs(delta) < kDegenerateTolerance) {
    throw Error(ErrorCode::degenerate_detuning, "resonance: Delta = 0");
  }
  if (std::abs(delta - alpha) < kDegenerateTolerance) {
    throw Error(ErrorCode::degenerate_detuning, "straddling point: Delta = alpha");
  }
  if (std::abs(sigma + alpha) < kDegenerateTolerance) {
    throw Error(ErrorCode::degenerate_detuning, "Sigma + alpha = 0");
  }
}

}  // namespace

DispersiveShifts perturbative_shifts(double g, double f_q, double f_r, double alpha) {
  const double delta = f_r - f_q;
  const double sigma = f_r + f_q;
  check_poles(delta, sigma, alpha);
  const double g2 = g * g;
  return {g2 / delta - g2 / sigma,
          2.0 * g2 * (alpha / (delta * (delta - alpha)) + alpha / (sigma * (sigma + alpha)))};
}

DispersiveShifts rwa_shifts(double g, double f_q, double f_r, double alpha) {
  const double delta = f_r - f_q;
  check_poles(delta, f_r + f_q, alpha);
  const double g2 = g * g;
  return {g2 / delta, 2.0 * g2 * alpha / (delta * (delta - alpha))};
}

double g_from_lamb(double chi_L, double f_q, double f_r) {
  const double delta = f_r - f_q;
  const double sigma = f_r + f_q;
  if (std::abs(delta) < kDegenerateTolerance) {
    throw Error(ErrorCode::degenerate_detuning, "resonance: Delta = 0");
  }
  const double lever = 1.0 / delta - 1.0 / sigma;
  const double g2 = chi_L / lever;
  if (!(g2 >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "sign of chi_L inconsistent with detuning");
  }
  return std::sqrt(g2);
}

double g_rwa_from_lamb(double chi_L, double f_q, double f_r) {
  const double delta = f_r - f_q;
  const double g2 = chi_L * delta;
  if (!(g2 >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "sign of chi_L inconsistent with detuning");
  }
  return std::sqrt(g2);
}

}  // namespace cqd::physics
