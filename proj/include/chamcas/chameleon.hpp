#pragma once

// Chameleon scalar-field core for two parallel plates with a gas in the gap.
//
// Conventions. Everything here is in natural units: energies and fields in
// GeV, lengths in GeV^-1, densities in GeV^4. The potential is
// V(phi) = Lambda^4 + Lambda^(4+n)/phi^n with matter coupling
// rho*exp(beta*phi/m_pl), linearized (exp ~ 1) since beta*phi_b/m_pl is tiny
// in every scenario of interest; the linearization_ratio field on BulkState
// quantifies that per call.
//
// The plate problem is parametrized by z = (phi0/phi_b)^(1/p) in (0,1), with
// p = 1/(n+1) and h_q(x) = (1-x^q)/q:
//
//   d(z)  = sqrt(2) z^((1+p)/2) / m_b * I(z),
//   I(z)  = int_0^1 x^(p-1) dx / sqrt(h_(p-1)(x) - z h_p(x)),
//   F/A   = (n+1)/n * Lambda^(4+n)/phi_b^n * z^(p-1) [h_(1-p)(z) - z h_(-p)(z)].
//
// Numerical identities used throughout:
//   * h_(p-1)(x) - z h_p(x) = (h_(p-1)(x) - h_p(x)) + (1-z) h_p(x), all terms
//     positive, which removes the z->1 cancellation from the integrand;
//   * h_(p-1)(x) - h_p(x) = x^(p-1) [h_(1-p)(x) - x h_(-p)(x)], and the
//     bracket expands about x=1 as u^2/2 (1 + (p+1)u/3 + ...) with u = 1-x.
//
// All evaluations use the same exact parametric form; the regime tag
// (algebraic / intermediate / screened) is reporting metadata only.

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>

#include "chamcas/constants.hpp"
#include "chamcas/errors.hpp"
#include "chamcas/quadrature.hpp"
#include "chamcas/roots.hpp"

namespace chamcas {

enum class MassConvention { full, linearized };

struct ChameleonModel {
    int n = 4;              // potential exponent, >= 1
    double beta = 1.0e4;    // matter coupling
    double lambda_gev = constants::lambda_de_gev;
    double m_pl_gev = constants::m_pl_reduced_gev;
    MassConvention mass_convention = MassConvention::full;

    double p() const { return 1.0 / (n + 1.0); }

    void validate() const {
        if (n < 1) throw std::domain_error("ChameleonModel: n must be >= 1");
        if (!(beta > 0.0)) throw std::domain_error("ChameleonModel: beta must be > 0");
        if (!(lambda_gev > 0.0)) throw std::domain_error("ChameleonModel: lambda must be > 0");
        if (!(m_pl_gev > 0.0)) throw std::domain_error("ChameleonModel: m_pl must be > 0");
    }
};

/// Field and mass at the effective-potential minimum for the gas density
/// between the plates.
struct BulkState {
    double rho_gev4 = 0.0;
    double phi_b_gev = 0.0;
    double m_b_gev = 0.0;
    double linearization_ratio = 0.0; // beta*phi_b/m_pl
    bool linearization_warning = false;
};

enum class Regime { algebraic, intermediate, screened };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::algebraic: return "algebraic";
        case Regime::intermediate: return "intermediate";
        default: return "screened";
    }
}

/// m_b*d bands for the regime tag. Metadata only: every regime is evaluated
/// with the same exact parametric form.
struct RegimeThresholds {
    double algebraic_max = 0.1;
    double screened_min = 10.0;

    Regime classify(double m_b_d) const {
        if (m_b_d < algebraic_max) return Regime::algebraic;
        if (m_b_d > screened_min) return Regime::screened;
        return Regime::intermediate;
    }
};

struct ProfileSolution {
    double z = 0.0;        // (phi0/phi_b)^(1/p)
    double phi0_gev = 0.0; // midpoint field
    double d_inv_gev = 0.0;
    double m_b_d = 0.0;
    Regime regime = Regime::algebraic;
};

struct ChameleonPressure {
    double value_gev4 = 0.0;
    bool fully_screened = false;
    double m_b_d = 0.0; // NaN when unknown to the constructing call
};

/// h_q(x) = (1 - x^q)/q, continued through q = 0 as -ln x.
inline double h(double p_index, double x) {
    if (!(x > 0.0)) throw std::domain_error("h: requires x > 0");
    if (std::abs(p_index) < 1e-8) {
        const double lx = std::log(x);
        return -lx * (1.0 + 0.5 * p_index * lx + p_index * p_index * lx * lx / 6.0);
    }
    return (1.0 - std::pow(x, p_index)) / p_index;
}

namespace detail {

// h_(1-p)(x) - x h_(-p)(x) expanded about x = 1 - u:
//   u^2/2 * (1 + (p+1)u/3 + (p+1)(p+2)u^2/12 + (p+1)(p+2)(p+3)u^3/60)
inline double pressure_bracket_series(double p, double u) {
    const double c1 = (p + 1.0) / 3.0;
    const double c2 = (p + 1.0) * (p + 2.0) / 12.0;
    const double c3 = (p + 1.0) * (p + 2.0) * (p + 3.0) / 60.0;
    return 0.5 * u * u * (1.0 + u * (c1 + u * (c2 + u * c3)));
}

// h_(1-p)(z) - z h_(-p)(z) with the z->1 cancellation handled by the series.
// The expm1/log1p forms keep the direct branch accurate down to the 1e-6
// switchover.
inline double pressure_bracket(double p, double z) {
    if (z == 1.0) return 0.0;
    const double u = 1.0 - z;
    if (u < 1e-6) return pressure_bracket_series(p, u);
    if (z >= 0.5) {
        const double lz = std::log1p(-u);
        const double h_1mp = -std::expm1((1.0 - p) * lz) / (1.0 - p);
        const double h_mp = std::expm1(-p * lz) / p; // (z^-p - 1)/p
        return h_1mp - z * h_mp;
    }
    return (1.0 - std::pow(z, 1.0 - p)) / (1.0 - p) -
           z * (std::pow(z, -p) - 1.0) / p;
}

// h_(p-1)(x) - h_p(x), positive on (0,1), evaluated without cancellation.
// u must equal 1-x to full precision when x is near 1.
inline double h_difference(double p, double x, double u) {
    if (x < 0.5)
        return (std::pow(x, p - 1.0) - 1.0) / (1.0 - p) -
               (1.0 - std::pow(x, p)) / p;
    if (u < 1e-4)
        return std::pow(x, p - 1.0) * pressure_bracket_series(p, u);
    const double lx = std::log1p(-u);
    const double h_pm1 = std::expm1((p - 1.0) * lx) / (1.0 - p);
    const double h_p = -std::expm1(p * lx) / p;
    return h_pm1 - h_p;
}

} // namespace detail

/// Bulk minimum of the effective potential at density rho: closed-form
/// inversion of d/dphi V(phi_b) = -beta*rho/m_pl for the power-law potential,
/// and the density-dependent mass at that minimum.
inline BulkState bulk_state(const ChameleonModel& model, double rho_gev4) {
    model.validate();
    if (!(rho_gev4 > 0.0))
        throw std::domain_error("bulk_state: rho must be > 0 "
                                "(use vacuum_asymptotic_pressure for the vacuum limit)");
    const double n = model.n;
    const double lam_4n = std::pow(model.lambda_gev, 4.0 + n);
    const double drive = model.beta * rho_gev4 / model.m_pl_gev;
    const double phi_b = std::pow(n * lam_4n / drive, 1.0 / (n + 1.0));
    const double ratio = model.beta * phi_b / model.m_pl_gev;
    double m2;
    if (model.mass_convention == MassConvention::full) {
        m2 = drive * ((n + 1.0) / phi_b + model.beta / model.m_pl_gev);
    } else {
        m2 = n * (n + 1.0) * lam_4n / std::pow(phi_b, n + 2.0);
    }
    return {rho_gev4, phi_b, std::sqrt(m2), ratio, ratio > 1e-2};
}

/// Dimensionless separation integral I(z). Singular like x^((p-1)/2) at x=0
/// and like an inverse square root at x=1 (log-divergent as z->1).
inline double separation_integral(const ChameleonModel& model, double z,
                                  const numerics::QuadratureSpec& spec = {}) {
    model.validate();
    if (!(z >= 0.0 && z < 1.0))
        throw std::domain_error("separation_integral: requires 0 <= z < 1");
    const double p = model.p();
    const double w = 1.0 - z; // exact: z < 0.5 leaves slack, z >= 0.5 is Sterbenz
    auto integrand = [p, w](double x, double xc) {
        const double u = xc < 0.0 ? -xc : 1.0 - x;
        const double x_pm1 = std::pow(x, p - 1.0);
        double h_p;
        if (x >= 0.5)
            h_p = -std::expm1(p * std::log1p(-u)) / p;
        else
            h_p = (1.0 - std::pow(x, p)) / p;
        const double denom = detail::h_difference(p, x, u) + w * h_p;
        return x_pm1 / std::sqrt(denom);
    };
    return numerics::integrate_endpoint_singular(integrand, 0.0, 1.0, spec).value;
}

/// d(z) = sqrt(2) z^((1+p)/2) I(z) / m_b. Strictly increasing on (0,1).
inline double separation_from_z(const ChameleonModel& model, const BulkState& bulk, double z,
                                const numerics::QuadratureSpec& spec = {}) {
    if (!(z > 0.0 && z < 1.0))
        throw std::domain_error("separation_from_z: requires 0 < z < 1");
    return std::numbers::sqrt2 * std::pow(z, 0.5 * (1.0 + model.p())) *
           separation_integral(model, z, spec) / bulk.m_b_gev;
}

namespace detail {

inline double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

// I(0) per potential exponent, cached. Computed once at the default (tight)
// quadrature tolerance so every caller sees the identical value.
inline double separation_integral_at_zero(const ChameleonModel& model) {
    static std::mutex mutex;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(model.n);
    if (it != cache.end()) return it->second;
    ChameleonModel reference = model;
    const double value = separation_integral(reference, 0.0, numerics::QuadratureSpec{});
    cache.emplace(model.n, value);
    return value;
}

} // namespace detail

/// Invert d(z) = d. The search runs in u = ln(z/(1-z)) so precision survives
/// z -> 1; separations needing 1-z below 1e-15 return nullopt (fully
/// screened: the pressure there is far below any measurable scale).
inline std::optional<ProfileSolution> z_from_separation(
    const ChameleonModel& model, const BulkState& bulk, double d_inv_gev,
    const RegimeThresholds& thresholds = {},
    const numerics::QuadratureSpec& quad = {}, double root_rel_tol = 1e-12) {
    model.validate();
    if (!(d_inv_gev > 0.0))
        throw std::domain_error("z_from_separation: requires d > 0");

    const double p = model.p();
    const double m_b_d = bulk.m_b_gev * d_inv_gev;
    auto d_of_u = [&](double u) {
        return separation_from_z(model, bulk, detail::logistic(u), quad);
    };

    // The z parametrization runs out at 1-z = 1e-15, which corresponds to
    // m_b*d ~ 69 (= -2 ln(1e-15) plus an O(1) constant). Probe the cutoff
    // only when m_b*d is anywhere near it.
    const double u_cutoff = std::log((1.0 - 1e-15) / 1e-15);
    if (m_b_d >= 40.0 && d_of_u(u_cutoff) < d_inv_gev) return std::nullopt;

    // initial guess from the small-z law d ~ sqrt(2) C_p z^((1+p)/2) / m_b
    const double c_p = detail::separation_integral_at_zero(model);
    const double z_guess = std::pow(m_b_d / (std::numbers::sqrt2 * c_p), 2.0 / (1.0 + p));
    double u0 = 0.0;
    if (z_guess > 0.0 && z_guess < 1.0)
        u0 = std::log(z_guess / (1.0 - z_guess));
    u0 = std::min(u0, u_cutoff - 1.0);

    double u_lo = u0 - 1.0;
    while (d_of_u(u_lo) >= d_inv_gev) {
        u_lo -= 4.0;
        if (u_lo < -700.0)
            throw root_error("z_from_separation: failed to bracket below");
    }
    double u_hi = std::min(u0 + 1.0, u_cutoff);
    while (d_of_u(u_hi) <= d_inv_gev) {
        u_hi = std::min(u_hi + 4.0, u_cutoff);
        if (u_hi >= u_cutoff) break; // d(u_cutoff) >= target, checked above
    }

    numerics::RootSpec root{u_lo, u_hi, root_rel_tol, 200};
    const double u = numerics::find_root_bracketed(
        [&](double uu) { return d_of_u(uu) - d_inv_gev; }, root);
    const double z = detail::logistic(u);
    return ProfileSolution{z, bulk.phi_b_gev * std::pow(z, p), d_inv_gev, m_b_d,
                           thresholds.classify(m_b_d)};
}

/// Chameleon pressure at midpoint parameter z: the parametric pressure
/// formula evaluated as written, with the (1-z)^2/2 series taking over for
/// 1-z < 1e-6 where direct evaluation would cancel catastrophically.
inline ChameleonPressure pressure_from_z(const ChameleonModel& model, const BulkState& bulk,
                                         double z) {
    model.validate();
    if (!(z > 0.0 && z <= 1.0))
        throw std::domain_error("pressure_from_z: requires 0 < z <= 1");
    const double p = model.p();
    const double n = model.n;
    const double bracket = detail::pressure_bracket(p, z);
    const double prefactor = (n + 1.0) / n * std::pow(model.lambda_gev, 4.0 + n) /
                             std::pow(bulk.phi_b_gev, n);
    const double value = prefactor * std::pow(z, p - 1.0) * bracket;
    return {value, false, std::numeric_limits<double>::quiet_NaN()};
}

/// Full composition rho, d -> pressure. Separations beyond the z
/// parametrization report exactly zero with the fully_screened flag set.
inline ChameleonPressure chameleon_pressure(const ChameleonModel& model, double rho_gev4,
                                            double d_inv_gev,
                                            const RegimeThresholds& thresholds = {},
                                            const numerics::QuadratureSpec& quad = {}) {
    const BulkState bulk = bulk_state(model, rho_gev4);
    const auto profile = z_from_separation(model, bulk, d_inv_gev, thresholds, quad);
    if (!profile) return {0.0, true, bulk.m_b_gev * d_inv_gev};
    ChameleonPressure result = pressure_from_z(model, bulk, profile->z);
    result.m_b_d = profile->m_b_d;
    return result;
}

/// Vacuum (rho -> 0) asymptote: c_n Lambda^4 (Lambda d)^(-2n/(n+2)), with the
/// exact prefactor obtained by eliminating z between the small-z limits of
/// the separation and pressure formulas,
///   c_n = ((n+1)/n)^2 (n(n+1))^(-n/(n+2)) (sqrt(2) I(0))^(2n/(n+2)).
/// Density- and coupling-independent by construction.
inline ChameleonPressure vacuum_asymptotic_pressure(const ChameleonModel& model,
                                                    double d_inv_gev) {
    model.validate();
    if (!(d_inv_gev > 0.0))
        throw std::domain_error("vacuum_asymptotic_pressure: requires d > 0");
    const double n = model.n;
    const double c_p = detail::separation_integral_at_zero(model);
    const double decay = 2.0 * n / (n + 2.0); // = -2(p-1)/(p+1)
    const double c_n = std::pow((n + 1.0) / n, 2.0) *
                       std::pow(n * (n + 1.0), -n / (n + 2.0)) *
                       std::pow(std::numbers::sqrt2 * c_p, decay);
    const double lambda_d = model.lambda_gev * d_inv_gev;
    const double value = c_n * std::pow(model.lambda_gev, 4.0) * std::pow(lambda_d, -decay);
    return {value, false, 0.0};
}

/// Validation oracle for the parametric separation: direct first-integral
/// quadrature d = sqrt(2) int_0^phi0 dphi / sqrt(V_lin(phi) - V_lin(phi0))
/// with V_lin(phi) = Lambda^(4+n) phi^-n + (beta rho/m_pl) phi. Agrees with
/// separation_from_z exactly when m_b is the linearized mass.
inline double oracle_separation(const ChameleonModel& model, const BulkState& bulk,
                                double phi0_gev, const numerics::QuadratureSpec& spec = {}) {
    model.validate();
    if (!(phi0_gev > 0.0 && phi0_gev < bulk.phi_b_gev))
        throw std::domain_error("oracle_separation: requires 0 < phi0 < phi_b");
    const double z = std::pow(phi0_gev / bulk.phi_b_gev, 1.0 / model.p());
    if (1.0 - z < 1e-6)
        throw std::domain_error("oracle_separation: phi0 too close to phi_b, "
                                "separation diverges");
    const double n = model.n;
    const double pot = std::pow(model.lambda_gev, 4.0 + n) * std::pow(phi0_gev, -n);
    const double slope = model.beta * bulk.rho_gev4 / model.m_pl_gev * phi0_gev;
    auto integrand = [pot, slope, n](double y, double yc) {
        const double u = yc < 0.0 ? -yc : 1.0 - y;
        double dv; // V_lin(phi0*y) - V_lin(phi0) >= 0 on (0,1)
        if (y >= 0.5)
            dv = pot * std::expm1(-n * std::log1p(-u)) - slope * u;
        else
            dv = pot * (std::pow(y, -n) - 1.0) - slope * (1.0 - y);
        return 1.0 / std::sqrt(dv);
    };
    return std::numbers::sqrt2 * phi0_gev *
           numerics::integrate_endpoint_singular(integrand, 0.0, 1.0, spec).value;
}

/// Diagnostic ratio of the parametric pressure to the effective-potential
/// drop V_lin(phi0(d)) - V_lin(phi_b). Reported alongside results; never fed
/// back into the pressure. Algebraically the ratio equals ((n+1)/n)^2 for
/// every z.
inline double oracle_energy_pressure(const ChameleonModel& model, const BulkState& bulk,
                                     double d_inv_gev, double delta_inv_gev,
                                     const RegimeThresholds& thresholds = {},
                                     const numerics::QuadratureSpec& quad = {}) {
    if (!(delta_inv_gev > 0.0 && delta_inv_gev < d_inv_gev))
        throw std::domain_error("oracle_energy_pressure: requires 0 < delta < d");
    for (double dd : {d_inv_gev - delta_inv_gev, d_inv_gev + delta_inv_gev}) {
        if (!z_from_separation(model, bulk, dd, thresholds, quad))
            throw std::domain_error("oracle_energy_pressure: no valid profile at d +- delta");
    }
    const auto profile = z_from_separation(model, bulk, d_inv_gev, thresholds, quad);
    if (!profile)
        throw std::domain_error("oracle_energy_pressure: no valid profile at d");
    const double z = profile->z;
    const double n = model.n;
    const double p = model.p();
    const double lam_4n = std::pow(model.lambda_gev, 4.0 + n);
    double potential_drop;
    if (1.0 - z >= 1e-5) {
        // direct, independent evaluation of V_lin(phi0) - V_lin(phi_b)
        const double drive = model.beta * bulk.rho_gev4 / model.m_pl_gev;
        potential_drop =
            lam_4n * (std::pow(profile->phi0_gev, -n) - std::pow(bulk.phi_b_gev, -n)) +
            drive * (profile->phi0_gev - bulk.phi_b_gev);
    } else {
        // cancellation-free form of the same drop
        potential_drop = (1.0 - p) * lam_4n / std::pow(bulk.phi_b_gev, n) *
                         detail::h_difference(p, z, 1.0 - z);
    }
    return pressure_from_z(model, bulk, z).value_gev4 / potential_drop;
}

} // namespace chamcas
