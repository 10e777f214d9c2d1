#pragma once

#include "cqd/types.hpp"

namespace cqd::physics {

// E_C = e^2 / (2 C h), C in fF, result in GHz.
double charging_energy(double C_fF);
// Inverse of charging_energy: E_C in GHz to C in fF.
double capacitance_of(double E_C_ghz);

// E_J = phi0 I_0 / h, I_0 in nA, result in GHz.
double ej_from_ic(double I_0_nA);

// E_L = phi0^2 / (L h), L in nH, result in GHz.
double inductive_energy(double L_nH);

// Effective lumped capacitance of a distributed CPW resonator, in fF.
double resonator_effective_capacitance(double f_r_ghz, double Z_c_ohm, ResonatorType mode);

// Transmon-resonator coupling in the weak-coupling, transmon limit:
//   g = (C_c/C_q) sqrt(e^2 omega_r / (hbar C_r)) (E_J / 8 E_C)^(1/4)
// evaluated with hbar restored and omega_r = 2 pi f_r; returned as linear GHz.
double coupling_g_capacitive(double C_c, double C_q, double C_r, double f_r, double E_J,
                             double E_C);

// True when C_c > 0.2 min(C_q, C_r), i.e. outside the weak-coupling regime the
// closed form assumes.
bool outside_weak_coupling(double C_c, double C_q, double C_r);

struct LoadedResonator {
  double f_r = 0.0;    // GHz
  double kappa = 0.0;  // MHz, full width
};

// Frequency pull and linewidth of a resonator loaded by a feedline coupling
// capacitor C_rf and its capacitance to ground C_cg:
//   omega_r = sqrt(C_r / C_tot) omega'
//   kappa   = (1/2) Z_0 omega_r^2 C_rf^2 / C_tot
// Capacitances in fF, Z_0 in ohm.
LoadedResonator coupled_res_freq_and_kappa(double f_prime, double C_r, double C_rf, double C_cg,
                                           double Z_0);

}  // namespace cqd::physics
