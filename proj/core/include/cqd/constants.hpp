#pragma once

#include <numbers>

namespace cqd {

// CODATA 2018 exact SI values.
struct PhysConstants {
  static constexpr double e = 1.602176634e-19;     // C
  static constexpr double h = 6.62607015e-34;      // J s
  static constexpr double hbar = h / (2.0 * std::numbers::pi);
  static constexpr double Phi0 = h / (2.0 * e);    // Wb
  static constexpr double phi0 = Phi0 / (2.0 * std::numbers::pi);
};

namespace units {
inline constexpr double femto = 1e-15;
inline constexpr double nano = 1e-9;
inline constexpr double mega = 1e6;
inline constexpr double giga = 1e9;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Public frequencies are linear (f = omega / 2pi). These helpers are the only
// place angular <-> linear conversions happen.
constexpr double angular_from_ghz(double f_ghz) { return two_pi * f_ghz * giga; }
constexpr double ghz_from_angular(double omega) { return omega / two_pi / giga; }
constexpr double mhz_from_angular(double omega) { return omega / two_pi / mega; }
constexpr double ghz_from_mhz(double f_mhz) { return f_mhz * 1e-3; }
constexpr double mhz_from_ghz(double f_ghz) { return f_ghz * 1e3; }
}  // namespace units

}  // namespace cqd
