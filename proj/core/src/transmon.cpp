#include "cqd/transmon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "cqd/error.hpp"

namespace cqd::physics {

namespace {

// Symmetric tridiagonal matrix with constant off-diagonal, as produced by the
// charge-basis transmon Hamiltonian.
class ChargeBasisMatrix {
 public:
  ChargeBasisMatrix(double E_J, double E_C, double n_g, int n_cut) : off_(-0.5 * E_J) {
    diag_.reserve(static_cast<std::size_t>(2 * n_cut + 1));
    for (int n = -n_cut; n <= n_cut; ++n) {
      const double q = n - n_g;
      diag_.push_back(4.0 * E_C * q * q);
    }
  }

  std::size_t size() const { return diag_.size(); }

  // Sturm count: number of eigenvalues strictly below x.
  std::size_t count_below(double x) const {
    const double off2 = off_ * off_;
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, off2);
    std::size_t count = 0;
    double q = diag_[0] - x;
    for (std::size_t i = 0;;) {
      if (std::abs(q) < pivmin) q = -pivmin;
      if (q < 0.0) ++count;
      if (++i == diag_.size()) break;
      q = diag_[i] - x - off2 / q;
    }
    return count;
  }

  double lower_bound() const {
    return *std::min_element(diag_.begin(), diag_.end()) - 2.0 * std::abs(off_);
  }
  double upper_bound() const {
    return *std::max_element(diag_.begin(), diag_.end()) + 2.0 * std::abs(off_);
  }

  // j-th smallest eigenvalue (0-based) by bisection on the Sturm count.
  double eigenvalue(std::size_t j, double lo, double hi) const {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < 256; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi))) break;
      if (count_below(mid) > j) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

 private:
  std::vector<double> diag_;
  double off_;
};

void check_levels_args(double E_J, double E_C, int n_cut, int k) {
  if (!(E_C > 0.0)) throw Error(ErrorCode::invalid_argument, "E_C must be > 0");
  if (!(E_J >= 0.0)) throw Error(ErrorCode::invalid_argument, "E_J must be >= 0");
  if (n_cut < 10) throw Error(ErrorCode::invalid_argument, "n_cut must be >= 10");
  if (k < 1 || k > 2 * n_cut - 1) {
    throw Error(ErrorCode::invalid_argument,
                "k=" + std::to_string(k) + " out of range for n_cut=" + std::to_string(n_cut));
  }
}

TransmonSpectrum spectrum_from(const std::vector<double>& E) {
  return {E[1] - E[0], (E[2] - E[1]) - (E[1] - E[0])};
}

}  // namespace

std::vector<double> transmon_levels(double E_J, double E_C, double n_g, int n_cut, int k) {
  check_levels_args(E_J, E_C, n_cut, k);
  const ChargeBasisMatrix m(E_J, E_C, n_g, n_cut);
  const double lo = m.lower_bound();
  const double hi = m.upper_bound();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    // Eigenvalue j is bounded below by eigenvalue j-1.
    const double start = out.empty() ? lo : out.back() - 1e-12 * std::max(1.0, std::abs(out.back()));
    out.push_back(m.eigenvalue(static_cast<std::size_t>(j), std::max(lo, start), hi));
  }
  return out;
}

TransmonSpectrum transmon_fq_alpha(double E_J, double E_C) {
  if (!(E_C > 0.0)) throw Error(ErrorCode::invalid_argument, "E_C must be > 0");
  if (!(E_J / E_C > 1.0)) throw Error(ErrorCode::invalid_argument, "E_J/E_C must be > 1");

  constexpr double kTol = 1e-9;
  constexpr int kMaxCutoff = 4096;
  int n_cut = kDefaultChargeCutoff;
  auto previous = transmon_levels(E_J, E_C, 0.0, n_cut, 3);
  while (n_cut < kMaxCutoff) {
    n_cut *= 2;
    auto current = transmon_levels(E_J, E_C, 0.0, n_cut, 3);
    bool converged = true;
    for (std::size_t i = 0; i < 3; ++i) {
      const double scale = std::max(std::abs(current[i]), E_C);
      if (std::abs(current[i] - previous[i]) > kTol * scale) converged = false;
    }
    if (converged) return spectrum_from(current);
    previous = std::move(current);
  }
  throw Error(ErrorCode::cutoff_not_converged, "charge cutoff exceeded " + std::to_string(kMaxCutoff));
}

TransmonSpectrum transmon_fq_alpha_approx(double E_J, double E_C) {
  if (!(E_J > 0.0) || !(E_C > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "E_J and E_C must be > 0");
  }
  return {std::sqrt(8.0 * E_J * E_C) - E_C, -E_C};
}

JosephsonCharging find_ej_ec(double f_q, double alpha) {
  if (!(f_q > 0.0)) throw Error(ErrorCode::invalid_argument, "f_q must be > 0");
  if (!(alpha < 0.0)) throw Error(ErrorCode::invalid_argument, "alpha must be < 0");
  if (!(std::abs(alpha) < f_q)) throw Error(ErrorCode::invalid_argument, "|alpha| must be < f_q");

  constexpr int kMaxIterations = 100;
  constexpr int kMaxHalvings = 20;
  constexpr double kResidualTol = 1e-12;
  constexpr double kFdStep = 1e-6;

  // Newton runs in log(E_J), log(E_C) so both stay positive.
  auto residual = [&](const std::array<double, 2>& x, std::array<double, 2>& r) {
    const double E_J = std::exp(x[0]);
    const double E_C = std::exp(x[1]);
    if (!(E_J / E_C > 1.0)) return false;
    const auto s = transmon_fq_alpha(E_J, E_C);
    r = {(s.f_q - f_q) / f_q, (s.alpha - alpha) / std::abs(alpha)};
    return true;
  };
  auto norm = [](const std::array<double, 2>& r) { return std::max(std::abs(r[0]), std::abs(r[1])); };

  const double E_C0 = -alpha;
  const double E_J0 = (f_q + E_C0) * (f_q + E_C0) / (8.0 * E_C0);
  std::array<double, 2> x{std::log(E_J0), std::log(E_C0)};
  std::array<double, 2> r{};
  if (!residual(x, r)) {
    throw Error(ErrorCode::infeasible_target, "initial guess has E_J/E_C <= 1");
  }

  auto finish = [&](int iterations) {
    const double E_J = std::exp(x[0]);
    const double E_C = std::exp(x[1]);
    const double ratio = E_J / E_C;
    if (!(ratio > 1.0 && ratio < 1e6)) {
      throw Error(ErrorCode::invalid_argument, "E_J/E_C=" + std::to_string(ratio) + " outside (1, 1e6)");
    }
    return JosephsonCharging{E_J, E_C, iterations};
  };

  for (int it = 0; it < kMaxIterations; ++it) {
    if (norm(r) < kResidualTol) return finish(it);

    // Central-difference Jacobian.
    double J[2][2];
    for (int col = 0; col < 2; ++col) {
      auto xp = x;
      auto xm = x;
      xp[col] += kFdStep;
      xm[col] -= kFdStep;
      std::array<double, 2> rp{}, rm{};
      if (!residual(xp, rp) || !residual(xm, rm)) {
        throw Error(ErrorCode::no_convergence, "Jacobian probe left the transmon regime");
      }
      J[0][col] = (rp[0] - rm[0]) / (2.0 * kFdStep);
      J[1][col] = (rp[1] - rm[1]) / (2.0 * kFdStep);
    }
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    if (!std::isfinite(det) || det == 0.0) {
      throw Error(ErrorCode::no_convergence, "singular Jacobian");
    }
    const std::array<double, 2> step{-(J[1][1] * r[0] - J[0][1] * r[1]) / det,
                                      -(-J[1][0] * r[0] + J[0][0] * r[1]) / det};

    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h, lambda *= 0.5) {
      std::array<double, 2> trial{x[0] + lambda * step[0], x[1] + lambda * step[1]};
      std::array<double, 2> rt{};
      if (residual(trial, rt) && norm(rt) < norm(r)) {
        x = trial;
        r = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (norm(r) < 1e-10) {
        // Already at the floor set by eigenvalue precision.
        return finish(it);
      }
      throw Error(ErrorCode::no_convergence, "damped Newton stalled; target may be unphysical");
    }
  }
  throw Error(ErrorCode::no_convergence, "no convergence in 100 iterations; target may be unphysical");
}

}  // namespace cqd::physics
