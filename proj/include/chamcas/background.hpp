#pragma once

// Background physics of the gap: the intervening gas (density and
// permittivity vs pressure), the ideal Casimir pressure with its 1/sqrt(eps)
// medium correction, and the electrostatic patch pressure. This sector works
// in SI and reports laboratory pressures in pN/cm^2.

#include <cmath>
#include <numbers>
#include <string>

#include "chamcas/constants.hpp"
#include "chamcas/errors.hpp"
#include "chamcas/quadrature.hpp"
#include "chamcas/units.hpp"

namespace chamcas {

/// Gas description: linear density law rho = density_coeff * P plus the
/// low-density Lorentz-Lorenz permittivity eps_r = 1 + N*alpha/eps0.
struct GasSpec {
    std::string name = "Xe";
    double density_coeff_g_per_l_atm = 5.462; // real-gas fit at room temperature
    double polarizability_f_m2 = 4.0e-40;     // atomic polarizability
    double temperature_k = 293.15;

    void validate() const {
        if (!(density_coeff_g_per_l_atm > 0.0))
            throw std::domain_error("GasSpec: density_coeff must be > 0");
        if (!(polarizability_f_m2 > 0.0))
            throw std::domain_error("GasSpec: polarizability must be > 0");
        if (!(temperature_k > 0.0))
            throw std::domain_error("GasSpec: temperature must be > 0");
    }
};

struct GasState {
    double pressure_atm = 0.0;
    double rho_g_per_l = 0.0;          // == kg/m^3
    double number_density_per_m3 = 0.0;
    double eps_rel = 1.0;
    bool above_validity = false; // P beyond the fitted window (warning, not error)
};

/// Validity window of the linear density fit; larger pressures only raise a flag.
inline constexpr double gas_pressure_validity_atm = 1.0;

inline GasState gas_state(const GasSpec& spec, double pressure_atm) {
    spec.validate();
    if (pressure_atm < 0.0)
        throw std::domain_error("gas_state: pressure must be >= 0");
    GasState state;
    state.pressure_atm = pressure_atm;
    state.rho_g_per_l = spec.density_coeff_g_per_l_atm * pressure_atm;
    // ideal-gas number density for the dielectric; the mass density keeps the
    // real-gas fit (difference < 1% over the validity window)
    state.number_density_per_m3 = pressure_atm * constants::atm_to_pa /
                                  (constants::boltzmann_j_per_k * spec.temperature_k);
    state.eps_rel = 1.0 + state.number_density_per_m3 * spec.polarizability_f_m2 /
                              constants::vacuum_permittivity_f_per_m;
    state.above_validity = pressure_atm > gas_pressure_validity_atm;
    return state;
}

/// Ideal zero-temperature perfect-conductor Casimir pressure between parallel
/// plates, reduced by 1/sqrt(eps_r) for the immersing medium. Result in pN/cm^2.
inline double casimir_pressure(double d_m, double eps_rel) {
    if (!(d_m > 0.0)) throw std::domain_error("casimir_pressure: requires d > 0");
    if (!(eps_rel >= 1.0)) throw std::domain_error("casimir_pressure: requires eps_rel >= 1");
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double d2 = d_m * d_m;
    const double pressure_pa = pi2 * constants::hbar_c_j_m / (240.0 * d2 * d2);
    return units::pressure_pa_to_lab(pressure_pa / std::sqrt(eps_rel));
}

/// Surface patch-potential model: long-wavelength variance sigma_L plus a
/// short-wavelength band [lambda_min, lambda_max] with variance sigma_S.
struct PatchModel {
    double sigma_l_v = 0.05;
    double sigma_s_v = 0.05;
    double lambda_min_m = 20e-6;
    double lambda_max_m = 200e-6;

    double k_min() const { return 2.0 * std::numbers::pi / lambda_max_m; }
    double k_max() const { return 2.0 * std::numbers::pi / lambda_min_m; }

    void validate() const {
        if (!(sigma_l_v >= 0.0) || !(sigma_s_v >= 0.0))
            throw std::domain_error("PatchModel: sigma variances must be >= 0");
        if (!(lambda_min_m > 0.0 && lambda_min_m < lambda_max_m))
            throw std::domain_error("PatchModel: requires 0 < lambda_min < lambda_max");
    }
};

namespace detail {

// k^3 / sinh^2(k d): switches to the 4 k^3 exp(-2 k d) tail before sinh
// overflows; the crossover error is ~exp(-4 k d), far below double precision.
inline double patch_integrand(double k, double d_m) {
    const double kd = k * d_m;
    const double k3 = k * k * k;
    if (kd > 20.0) {
        const double e = std::exp(-kd);
        return 4.0 * k3 * e * e;
    }
    const double s = std::sinh(kd);
    return k3 / (s * s);
}

} // namespace detail

/// Patch-potential pressure between the plates with the whole expression
/// scaled by eps_r for the immersing medium. Result in pN/cm^2.
inline double electrostatic_pressure(const PatchModel& patch, double d_m, double eps_rel,
                                     const numerics::QuadratureSpec& spec = {}) {
    patch.validate();
    if (!(d_m > 0.0)) throw std::domain_error("electrostatic_pressure: requires d > 0");
    if (!(eps_rel >= 1.0))
        throw std::domain_error("electrostatic_pressure: requires eps_rel >= 1");
    const double k_min = patch.k_min();
    const double k_max = patch.k_max();
    const double long_term = patch.sigma_l_v * patch.sigma_l_v / (2.0 * d_m * d_m);
    double short_term = 0.0;
    if (patch.sigma_s_v > 0.0) {
        const double integral =
            numerics::integrate_endpoint_singular(
                [d_m](double k) { return detail::patch_integrand(k, d_m); }, k_min, k_max,
                spec)
                .value;
        short_term = 2.0 * patch.sigma_s_v * patch.sigma_s_v /
                     (k_max * k_max - k_min * k_min) * integral;
    }
    const double pressure_pa =
        constants::vacuum_permittivity_f_per_m * eps_rel * (long_term + short_term);
    return units::pressure_pa_to_lab(pressure_pa);
}

} // namespace chamcas
