#include "cqd/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cqd/constants.hpp"
#include "cqd/error.hpp"

namespace cqd::physics {

namespace {

using C = PhysConstants;

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, what);
}

}  // namespace

double charging_energy(double C_fF) {
  require(C_fF > 0.0, "capacitance must be > 0");
  return C::e * C::e / (2.0 * C_fF * units::femto * C::h) / units::giga;
}

double capacitance_of(double E_C_ghz) {
  require(E_C_ghz > 0.0, "charging energy must be > 0");
  return C::e * C::e / (2.0 * E_C_ghz * units::giga * C::h) / units::femto;
}

double ej_from_ic(double I_0_nA) {
  require(I_0_nA >= 0.0, "critical current must be >= 0");
  return C::phi0 * I_0_nA * units::nano / C::h / units::giga;
}

double inductive_energy(double L_nH) {
  require(L_nH > 0.0, "inductance must be > 0");
  return C::phi0 * C::phi0 / (L_nH * units::nano * C::h) / units::giga;
}

double resonator_effective_capacitance(double f_r_ghz, double Z_c_ohm, ResonatorType mode) {
  require(f_r_ghz > 0.0, "resonator frequency must be > 0");
  require(Z_c_ohm > 0.0, "characteristic impedance must be > 0");
  const double omega = units::angular_from_ghz(f_r_ghz);
  return std::numbers::pi / (mode_factor(mode) * omega * Z_c_ohm) / units::femto;
}

double coupling_g_capacitive(double C_c, double C_q, double C_r, double f_r, double E_J,
                             double E_C) {
  require(C_c >= 0.0, "C_c must be >= 0");
  require(C_q > 0.0 && C_r > 0.0, "C_q and C_r must be > 0");
  require(f_r > 0.0, "f_r must be > 0");
  require(E_J > 0.0 && E_C > 0.0, "E_J and E_C must be > 0");
  const double omega_r = units::angular_from_ghz(f_r);
  // Angular rad/s once hbar is restored; e^2 omega / (hbar C) has units s^-2.
  const double vacuum = std::sqrt(C::e * C::e * omega_r / (C::hbar * C_r * units::femto));
  const double g_angular = (C_c / C_q) * vacuum * std::pow(E_J / (8.0 * E_C), 0.25);
  return units::ghz_from_angular(g_angular);
}

bool outside_weak_coupling(double C_c, double C_q, double C_r) {
  return C_c > 0.2 * std::min(C_q, C_r);
}

LoadedResonator coupled_res_freq_and_kappa(double f_prime, double C_r, double C_rf, double C_cg,
                                           double Z_0) {
  require(f_prime > 0.0, "f_prime must be > 0");
  require(C_r > 0.0, "C_r must be > 0");
  require(C_rf >= 0.0 && C_cg >= 0.0, "C_rf and C_cg must be >= 0");
  require(Z_0 > 0.0, "Z_0 must be > 0");
  const double total = C_r + C_rf + C_cg;
  LoadedResonator out;
  out.f_r = std::sqrt(C_r / total) * f_prime;
  const double omega_r = units::angular_from_ghz(out.f_r);
  const double c_rf = C_rf * units::femto;
  const double kappa_angular = 0.5 * Z_0 * omega_r * omega_r * c_rf * c_rf / (total * units::femto);
  out.kappa = units::mhz_from_angular(kappa_angular);
  return out;
}

}  // namespace cqd::physics
