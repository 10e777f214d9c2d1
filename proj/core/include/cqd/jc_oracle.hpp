#pragma once

#include <Eigen/Core>
#include <map>
#include <utility>
#include <vector>

namespace cqd::oracle {

// Transmon-resonator Hamiltonian
//   f_r (a^dag a + 1/2) + f_q b^dag b + (alpha/2) b^dag b (b^dag b - 1) + g (a - a^dag)(b - b^dag)
// truncated to n_r resonator photons and n_q transmon levels. All in GHz.
struct JCSpec {
  double f_r = 0.0;
  double f_q = 0.0;
  double alpha = 0.0;
  double g = 0.0;
  int n_r = 12;
  int n_q = 6;
};

enum class CouplingForm {
  full,  // all four ab, a^dag b, a b^dag, a^dag b^dag terms
  rwa,   // number-conserving a^dag b + a b^dag only
};

// Bare product state |m n>: m resonator photons, n transmon excitations.
using BareLabel = std::pair<int, int>;

// Dense real symmetric matrix in the product basis, index m * n_q + n.
Eigen::MatrixXd jc_hamiltonian(const JCSpec& spec, CouplingForm form = CouplingForm::full);

// Bare (g = 0) energy of |m n>.
double bare_energy(const JCSpec& spec, int m, int n);

struct DressedLevels {
  std::map<BareLabel, double> energies;  // dressed energy per bare label
  std::map<BareLabel, double> overlaps;  // |<bare|dressed>|^2 of the chosen eigenvector
};

// Diagonalizes the Hamiltonian and labels each requested bare state with the
// eigenvector of maximum overlap (ties broken by energy proximity). Throws
// labeling_ambiguity when the best overlap is <= 0.5.
DressedLevels dressed_levels(const JCSpec& spec, const std::vector<BareLabel>& labels,
                             CouplingForm form = CouplingForm::full);

struct NumericalShifts {
  double chi_L = 0.0;  // GHz
  double chi = 0.0;    // GHz
  int n_r = 0;         // cutoffs at which the result was accepted
  int n_q = 0;
};

// chi_L = (E_10 - E_00) - f_r and chi = (E_11 - E_01) - (E_10 - E_00) from
// exact dressed energies. Cutoffs double until both shifts are stable to 0.1%.
NumericalShifts numerical_shifts(const JCSpec& spec, CouplingForm form = CouplingForm::full);

// Second-order energy correction of |m n> under g (a - a^dag)(b - b^dag):
//   g^2 ( mn/(Sigma + (n-1)alpha) + m(n+1)/(Delta - n alpha)
//         - (m+1)n/(Delta - (n-1)alpha) - (m+1)(n+1)/(Sigma + n alpha) )
// Terms with a zero numerator are skipped; any remaining denominator within
// 1e-9 GHz of zero throws resonant_denominator.
double second_order_E2(int m, int n, double g, double f_q, double f_r, double alpha);

}  // namespace cqd::oracle
