#pragma once

#include <optional>
#include <string_view>

namespace cqd {

enum class ResonatorType { quarter, half };
enum class CouplingKind { distributed, lumped };

// m in C_r = pi / (m omega_r Z_c).
constexpr int mode_factor(ResonatorType type) { return type == ResonatorType::quarter ? 4 : 2; }

std::string_view to_string(ResonatorType type) noexcept;
std::string_view to_string(CouplingKind kind) noexcept;
ResonatorType parse_resonator_type(std::string_view text);
CouplingKind parse_coupling_kind(std::string_view text);

// Lumped circuit quantities for one device. Capacitances in fF, energies as
// E/h in GHz, inductance in nH, critical current in nA.
struct CircuitParams {
  double C_q = 0.0;
  double C_c = 0.0;
  double C_r = 0.0;
  std::optional<double> C_rf;
  std::optional<double> C_cg;
  std::optional<double> L;
  double E_J = 0.0;
  double E_C = 0.0;
  std::optional<double> I_0;

  // E_L = phi0^2 / L, GHz. Empty when L is absent.
  std::optional<double> E_L() const;

  // Throws Error(invalid_argument) on the first violated invariant.
  void validate() const;
};

// The five target quantities. Frequencies are linear GHz except kappa (MHz).
struct HamiltonianParams {
  double f_q = 0.0;
  double alpha = 0.0;
  double f_r = 0.0;
  double kappa = 0.0;
  double g = 0.0;

  double delta() const { return f_r - f_q; }
  double sigma() const { return f_r + f_q; }

  bool operator==(const HamiltonianParams&) const = default;
};

struct TunableCouplerParams {
  double f_max = 0.0;  // GHz
  double d = 0.0;      // junction asymmetry
  double f_r = 0.0;    // GHz
  double g = 0.0;      // GHz
};

}  // namespace cqd
