#include "cqd/extraction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "cqd/error.hpp"

namespace cqd::physics {

double flux_tuned_fq(double phi, double f_max, double d) {
  if (!(d >= 0.0 && d <= 1.0)) throw Error(ErrorCode::invalid_argument, "asymmetry d must be in [0, 1]");
  if (!(f_max > 0.0)) throw Error(ErrorCode::invalid_argument, "f_max must be > 0");
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return f_max * std::pow(c * c + d * d * s * s, 0.25);
}

Branches avoided_crossing_branches(double f_qubit, double f_r, double g) {
  if (!(f_qubit > 0.0 && f_r > 0.0 && g >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "branch frequencies must be > 0 and g >= 0");
  }
  const double sum = std::sqrt((f_r + f_qubit) * (f_r + f_qubit) + 4.0 * g * g);
  const double diff = std::sqrt((f_r - f_qubit) * (f_r - f_qubit) + 4.0 * g * g);
  return {0.5 * (sum + diff), 0.5 * (sum - diff)};
}

double alpha_from_spectroscopy(double f_01, double f_two_photon) {
  if (!(f_01 > 0.0 && f_two_photon > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "transition frequencies must be > 0");
  }
  return 2.0 * f_two_photon - 2.0 * f_01;
}

namespace {

using Params = Eigen::Vector4d;  // f_max, d, f_r, g

Params to_vector(const TunableCouplerParams& p) { return {p.f_max, p.d, p.f_r, p.g}; }
TunableCouplerParams from_vector(const Params& v) { return {v[0], v[1], v[2], v[3]}; }

void project(Params& p) {
  p[1] = std::clamp(p[1], 0.0, 1.0);
  p[3] = std::abs(p[3]);
  p[0] = std::max(p[0], 1e-9);
  p[2] = std::max(p[2], 1e-9);
}

// Which branch a point is matched to: true for upper.
using Assignment = std::vector<char>;

double branch_value(const Params& p, double phi, bool upper) {
  const auto b = avoided_crossing_branches(flux_tuned_fq(phi, p[0], p[1]), p[2], p[3]);
  return upper ? b.upper : b.lower;
}

Assignment assign_branches(const Params& p, std::span<const FluxPoint> pts) {
  Assignment a(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto b = avoided_crossing_branches(flux_tuned_fq(pts[i].phi, p[0], p[1]), p[2], p[3]);
    a[i] = std::abs(b.upper - pts[i].f_observed) <= std::abs(b.lower - pts[i].f_observed);
  }
  return a;
}

Eigen::VectorXd residuals(const Params& p, std::span<const FluxPoint> pts, const Assignment& a) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    r[static_cast<Eigen::Index>(i)] = branch_value(p, pts[i].phi, a[i] != 0) - pts[i].f_observed;
  }
  return r;
}

}  // namespace

FitResult fit_avoided_crossing(std::span<const FluxPoint> points,
                               const TunableCouplerParams& initial_guess, const FitOptions& options) {
  if (points.size() < 4) throw Error(ErrorCode::invalid_argument, "need at least 4 points");
  const auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                            [](const auto& a, const auto& b) { return a.phi < b.phi; });
  const double span = hi->phi - lo->phi;
  if (span == 0.0) throw Error(ErrorCode::degenerate_data, "all flux points identical");
  if (span < std::numbers::pi / 4.0 - 1e-12) {
    throw Error(ErrorCode::invalid_argument, "flux points must span at least a quarter period (pi/4)");
  }

  std::vector<int> free;
  if (!options.fix_f_max) free.push_back(0);
  if (!options.fix_d) free.push_back(1);
  free.push_back(2);
  free.push_back(3);
  const auto n_free = static_cast<Eigen::Index>(free.size());
  if (static_cast<Eigen::Index>(points.size()) <= n_free) {
    throw Error(ErrorCode::degenerate_data, "fewer points than free parameters");
  }

  auto objective = [&](const Params& q) {
    return residuals(q, points, assign_branches(q, points)).squaredNorm();
  };

  auto jacobian = [&](const Params& q, const Assignment& a) {
    Eigen::MatrixXd J(static_cast<Eigen::Index>(points.size()), n_free);
    for (Eigen::Index c = 0; c < n_free; ++c) {
      const int k = free[static_cast<std::size_t>(c)];
      const double h = 1e-7 * std::max(std::abs(q[k]), 1e-3);
      Params qp = q, qm = q;
      qp[k] += h;
      qm[k] -= h;
      // Keep the probe inside the physical domain for d.
      if (k == 1) {
        qp[1] = std::min(qp[1], 1.0);
        qm[1] = std::max(qm[1], 0.0);
      }
      J.col(c) = (residuals(qp, points, a) - residuals(qm, points, a)) / (qp[k] - qm[k]);
    }
    return J;
  };

  struct Run {
    Params p;
    double cost = 0.0;
    int iterations = 0;
    bool converged = false;
  };

  auto levenberg_marquardt = [&](Params p) {
    project(p);
    Run run;
    double cost = objective(p);
    double lambda = 1e-3;
    int it = 0;
    bool converged = false;
    for (; it < options.max_iterations; ++it) {
      if (cost < 1e-28) {
        converged = true;
        break;
      }
      const auto a = assign_branches(p, points);
      const Eigen::VectorXd r = residuals(p, points, a);
      const Eigen::MatrixXd J = jacobian(p, a);
      const Eigen::MatrixXd A = J.transpose() * J;
      const Eigen::VectorXd b = J.transpose() * r;

      bool accepted = false;
      while (lambda < 1e16) {
        Eigen::MatrixXd damped = A;
        for (Eigen::Index i = 0; i < n_free; ++i) damped(i, i) += lambda * std::max(A(i, i), 1e-12);
        const Eigen::VectorXd delta = damped.ldlt().solve(-b);
        Params trial = p;
        for (Eigen::Index c = 0; c < n_free; ++c) trial[free[static_cast<std::size_t>(c)]] += delta[c];
        project(trial);
        const double trial_cost = objective(trial);
        if (trial_cost < cost) {
          const double step = (trial - p).cwiseAbs().maxCoeff();
          const double rel_drop = (cost - trial_cost) / std::max(cost, 1e-300);
          p = trial;
          cost = trial_cost;
          lambda = std::max(lambda / 10.0, 1e-12);
          accepted = true;
          if (rel_drop < 1e-15 || step < 1e-14 * std::max(1.0, p.cwiseAbs().maxCoeff())) converged = true;
          break;
        }
        lambda *= 10.0;
      }
      // No descent direction left at any damping: p is a local minimum.
      if (!accepted) converged = true;
      if (converged) break;
    }
    run.p = p;
    run.cost = cost;
    run.iterations = it;
    run.converged = converged;
    return run;
  };

  // The nearest-branch matching makes the objective piecewise, with spurious
  // minima where the qubit branch never crosses. A few restarts around the
  // guess in f_max and g pick the right basin; the guess itself runs first.
  const Params guess = to_vector(initial_guess);
  std::vector<Params> starts{guess};
  for (const double sf : {1.0, 0.97, 1.03}) {
    for (const double sg : {1.0, 0.7, 1.4}) {
      if (sf == 1.0 && sg == 1.0) continue;
      if (sf != 1.0 && options.fix_f_max) continue;
      Params q = guess;
      q[0] *= sf;
      q[3] *= sg;
      starts.push_back(q);
    }
  }
  std::optional<Run> best;
  for (const auto& start : starts) {
    const Run run = levenberg_marquardt(start);
    if (run.converged && (!best || run.cost < best->cost)) best = run;
    if (best && best->cost < 1e-28) break;
  }
  if (!best) throw Error(ErrorCode::no_convergence, "avoided-crossing fit did not converge");
  const Params p = best->p;
  const double cost = best->cost;
  const int it = best->iterations;

  FitResult out;
  out.params = from_vector(p);
  out.iterations = it;
  out.rms_residual = std::sqrt(cost / static_cast<double>(points.size()));

  const auto a = assign_branches(p, points);
  const Eigen::MatrixXd J = jacobian(p, a);
  const double dof = static_cast<double>(points.size()) - static_cast<double>(n_free);
  const double s2 = cost / dof;
  const Eigen::MatrixXd cov = s2 * (J.transpose() * J).inverse();
  Params se = Params::Zero();
  for (Eigen::Index c = 0; c < n_free; ++c) {
    se[free[static_cast<std::size_t>(c)]] = std::sqrt(std::max(cov(c, c), 0.0));
  }
  out.std_errors = from_vector(se);
  return out;
}

}  // namespace cqd::physics
