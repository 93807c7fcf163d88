#pragma once

// Physical constants and unit conversion factors.
//
// Every conversion factor in the project is derived here from five base
// constants (h, c, e, eps0, kB); none is restated as an independent literal
// elsewhere. Chameleon-sector quantities are handled in natural units
// (powers of GeV), electromagnetic-sector quantities in SI; the factors
// below bridge the two at well-defined seams.

#include <numbers>

namespace chamcas::constants {

// ---- base constants (SI 2019 exact values where defined, CODATA 2018 else)
inline constexpr double planck_constant_j_s   = 6.62607015e-34;   // h, exact
inline constexpr double speed_of_light_m_s    = 299792458.0;      // c, exact
inline constexpr double elementary_charge_c   = 1.602176634e-19;  // e, exact
inline constexpr double boltzmann_j_per_k     = 1.380649e-23;     // kB, exact
inline constexpr double vacuum_permittivity_f_per_m = 8.8541878128e-12; // eps0

// ---- derived
inline constexpr double hbar_j_s      = planck_constant_j_s / (2.0 * std::numbers::pi);
inline constexpr double ev_to_joule   = elementary_charge_c;
inline constexpr double gev_to_joule  = 1.0e9 * ev_to_joule;
inline constexpr double hbar_c_j_m    = hbar_j_s * speed_of_light_m_s;
inline constexpr double hbar_c_gev_m  = hbar_c_j_m / gev_to_joule;   // ~1.9733e-16 GeV*m
inline constexpr double hbar_gev_s    = hbar_j_s / gev_to_joule;     // ~6.5821e-25 GeV*s
inline constexpr double kg_to_gev     = speed_of_light_m_s * speed_of_light_m_s / gev_to_joule;

// 1 GeV^4 of energy density expressed in Pa (= J/m^3): GeV -> J over (GeV^-1 -> m)^3.
inline constexpr double gev4_to_pa =
    gev_to_joule / (hbar_c_gev_m * hbar_c_gev_m * hbar_c_gev_m);

// 1 kg/m^3 of mass density expressed as GeV^4 energy density (rho*c^2).
inline constexpr double kg_per_m3_to_gev4 =
    speed_of_light_m_s * speed_of_light_m_s / gev4_to_pa;

inline constexpr double atm_to_pa       = 101325.0;
inline constexpr double pa_to_pn_per_cm2 = 1.0e8;   // 1e12 pN/N over 1e4 cm^2/m^2

// ---- model defaults (overridable through configuration)
// Dark-energy scale and the rounded reduced Planck mass used throughout the
// headline scenario; the CODATA-derived reduced Planck mass is provided as a
// named override value.
inline constexpr double lambda_de_gev        = 2.4e-12;
inline constexpr double m_pl_reduced_gev     = 2.0e18;
inline constexpr double m_pl_codata_gev      = 2.435e18;

} // namespace chamcas::constants
