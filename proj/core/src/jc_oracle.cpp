#include "cqd/jc_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "cqd/error.hpp"

namespace cqd::oracle {

namespace {

void check_spec(const JCSpec& s) {
  if (s.n_r < 4) throw Error(ErrorCode::invalid_argument, "resonator cutoff n_r must be >= 4");
  if (s.n_q < 3) throw Error(ErrorCode::invalid_argument, "transmon cutoff n_q must be >= 3");
}

Eigen::Index index_of(const JCSpec& s, int m, int n) {
  return static_cast<Eigen::Index>(m) * s.n_q + n;
}

}  // namespace

double bare_energy(const JCSpec& s, int m, int n) {
  return s.f_r * (m + 0.5) + s.f_q * n + 0.5 * s.alpha * n * (n - 1);
}

Eigen::MatrixXd jc_hamiltonian(const JCSpec& spec, CouplingForm form) {
  check_spec(spec);
  const Eigen::Index dim = static_cast<Eigen::Index>(spec.n_r) * spec.n_q;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  for (int m = 0; m < spec.n_r; ++m) {
    for (int n = 0; n < spec.n_q; ++n) H(index_of(spec, m, n), index_of(spec, m, n)) = bare_energy(spec, m, n);
  }
  // <m-1|a|m> = sqrt(m). In (a - a^dag)(b - b^dag) the ab and a^dag b^dag
  // terms enter with +1, a b^dag and a^dag b with -1; the product of two real
  // antisymmetric matrices is symmetric.
  for (int m = 0; m < spec.n_r; ++m) {
    for (int n = 0; n < spec.n_q; ++n) {
      const Eigen::Index col = index_of(spec, m, n);
      // a b^dag: |m n> -> |m-1, n+1>
      if (m > 0 && n + 1 < spec.n_q) {
        const double v = -spec.g * std::sqrt(static_cast<double>(m) * (n + 1));
        H(index_of(spec, m - 1, n + 1), col) += v;
        H(col, index_of(spec, m - 1, n + 1)) += v;
      }
      if (form == CouplingForm::full) {
        // a^dag b^dag: |m n> -> |m+1, n+1>
        if (m + 1 < spec.n_r && n + 1 < spec.n_q) {
          const double v = spec.g * std::sqrt(static_cast<double>(m + 1) * (n + 1));
          H(index_of(spec, m + 1, n + 1), col) += v;
          H(col, index_of(spec, m + 1, n + 1)) += v;
        }
      }
    }
  }
  return H;
}

DressedLevels dressed_levels(const JCSpec& spec, const std::vector<BareLabel>& labels, CouplingForm form) {
  const Eigen::MatrixXd H = jc_hamiltonian(spec, form);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::no_convergence, "eigensolver failed");
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();

  DressedLevels out;
  for (const auto& [m, n] : labels) {
    if (m < 0 || n < 0 || m >= spec.n_r || n >= spec.n_q) {
      throw Error(ErrorCode::invalid_argument, "label outside truncated space");
    }
    const Eigen::Index row = index_of(spec, m, n);
    const double bare = bare_energy(spec, m, n);
    Eigen::Index best = 0;
    double best_overlap = -1.0;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      const double ov = vectors(row, k) * vectors(row, k);
      const bool better = ov > best_overlap + 1e-12;
      const bool tie = std::abs(ov - best_overlap) <= 1e-12 &&
                       std::abs(values[k] - bare) < std::abs(values[best] - bare);
      if (better || tie) {
        best = k;
        best_overlap = ov;
      }
    }
    if (!(best_overlap > 0.5)) {
      throw Error(ErrorCode::labeling_ambiguity,
                  "state |" + std::to_string(m) + "," + std::to_string(n) +
                      "> has max overlap " + std::to_string(best_overlap) + " (strong coupling?)");
    }
    out.energies[{m, n}] = values[best];
    out.overlaps[{m, n}] = best_overlap;
  }
  return out;
}

namespace {

NumericalShifts shifts_at(const JCSpec& spec, CouplingForm form) {
  const auto levels = dressed_levels(spec, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}, form);
  const double e00 = levels.energies.at({0, 0});
  const double e10 = levels.energies.at({1, 0});
  const double e01 = levels.energies.at({0, 1});
  const double e11 = levels.energies.at({1, 1});
  return {(e10 - e00) - spec.f_r, (e11 - e01) - (e10 - e00), spec.n_r, spec.n_q};
}

bool stable(const NumericalShifts& a, const NumericalShifts& b) {
  constexpr double kRel = 1e-3;
  constexpr double kAbsFloor = 1e-12;  // GHz; shifts this small are zero
  auto close = [&](double x, double y) { return std::abs(x - y) <= std::max(kRel * std::abs(x), kAbsFloor); };
  return close(a.chi_L, b.chi_L) && close(a.chi, b.chi);
}

}  // namespace

NumericalShifts numerical_shifts(const JCSpec& spec, CouplingForm form) {
  check_spec(spec);
  constexpr int kMaxResonator = 384;
  constexpr int kMaxTransmon = 96;
  JCSpec current = spec;
  for (;;) {
    const auto base = shifts_at(current, form);
    JCSpec more_r = current;
    more_r.n_r *= 2;
    JCSpec more_q = current;
    more_q.n_q *= 2;
    const bool r_ok = stable(base, shifts_at(more_r, form));
    const bool q_ok = stable(base, shifts_at(more_q, form));
    if (r_ok && q_ok) return base;
    if (!r_ok) current.n_r *= 2;
    if (!q_ok) current.n_q *= 2;
    if (current.n_r > kMaxResonator || current.n_q > kMaxTransmon) {
      throw Error(ErrorCode::cutoff_not_converged, "shifts not stable to 0.1% within cutoff limits");
    }
  }
}

double second_order_E2(int m, int n, double g, double f_q, double f_r, double alpha) {
  const double delta = f_r - f_q;
  const double sigma = f_r + f_q;
  const double numerators[4] = {static_cast<double>(m) * n, static_cast<double>(m) * (n + 1),
                                -static_cast<double>(m + 1) * n, -static_cast<double>(m + 1) * (n + 1)};
  const double denominators[4] = {sigma + (n - 1) * alpha, delta - n * alpha, delta - (n - 1) * alpha,
                                  sigma + n * alpha};
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (numerators[i] == 0.0) continue;
    if (std::abs(denominators[i]) < 1e-9) {
      throw Error(ErrorCode::resonant_denominator, "term " + std::to_string(i) + " is resonant");
    }
    sum += numerators[i] / denominators[i];
  }
  return g * g * sum;
}

}  // namespace cqd::oracle
