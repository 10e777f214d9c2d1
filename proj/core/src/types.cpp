#include "cqd/types.hpp"

#include <cmath>
#include <string>

#include "cqd/circuit.hpp"
#include "cqd/constants.hpp"
#include "cqd/error.hpp"

namespace cqd {

std::string_view to_string(ResonatorType type) noexcept {
  return type == ResonatorType::quarter ? "quarter" : "half";
}

std::string_view to_string(CouplingKind kind) noexcept {
  return kind == CouplingKind::distributed ? "distributed" : "lumped";
}

ResonatorType parse_resonator_type(std::string_view text) {
  if (text == "quarter") return ResonatorType::quarter;
  if (text == "half") return ResonatorType::half;
  throw Error(ErrorCode::parse, "unknown resonator type '" + std::string(text) + "'");
}

CouplingKind parse_coupling_kind(std::string_view text) {
  if (text == "distributed") return CouplingKind::distributed;
  if (text == "lumped") return CouplingKind::lumped;
  throw Error(ErrorCode::parse, "unknown coupling kind '" + std::string(text) + "'");
}

std::optional<double> CircuitParams::E_L() const {
  if (!L) return std::nullopt;
  return physics::inductive_energy(*L);
}

void CircuitParams::validate() const {
  auto require_positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw Error(ErrorCode::invalid_argument, std::string(name) + " must be > 0");
  };
  require_positive(C_q, "C_q");
  require_positive(C_c, "C_c");
  require_positive(C_r, "C_r");
  if (C_rf) require_positive(*C_rf, "C_rf");
  if (C_cg) require_positive(*C_cg, "C_cg");
  if (L) require_positive(*L, "L");
  require_positive(E_C, "E_C");
  if (!(E_J >= 0.0)) throw Error(ErrorCode::invalid_argument, "E_J must be >= 0");
  if (I_0) {
    if (*I_0 < 0.0) throw Error(ErrorCode::invalid_argument, "I_0 must be >= 0");
    const double expected = physics::ej_from_ic(*I_0);
    const double scale = std::max(std::abs(expected), std::abs(E_J));
    if (scale > 0.0 && std::abs(expected - E_J) > 1e-9 * scale) {
      throw Error(ErrorCode::invalid_argument, "E_J inconsistent with I_0");
    }
  }
}

}  // namespace cqd
