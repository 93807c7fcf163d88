#pragma once

// Composition of the chameleon and background modules into observables:
// per-point pressure breakdowns, screening percentages, the four standard
// figure datasets, and sensitivity estimates for a force-vs-density run.
//
// Sweep points are independent pure evaluations; they may execute on several
// threads, but results land in their sweep-index slot so the output is
// bit-identical for any thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "chamcas/background.hpp"
#include "chamcas/chameleon.hpp"
#include "chamcas/units.hpp"

namespace chamcas {

enum class Component { chameleon, casimir, electrostatic };

inline const char* to_string(Component c) {
    switch (c) {
        case Component::chameleon: return "chameleon";
        case Component::casimir: return "casimir";
        default: return "electrostatic";
    }
}

struct SweepSpec {
    enum class Variable { d, P, beta_rho };
    enum class Spacing { linear, log };
    Variable variable = Variable::P;
    double from = 0.0;
    double to = 0.5;
    int points = 26;
    Spacing spacing = Spacing::linear;

    void validate() const {
        if (points < 2) throw std::domain_error("SweepSpec: points must be >= 2");
        if (!(from < to)) throw std::domain_error("SweepSpec: requires from < to");
        const double min_allowed = variable == Variable::P ? 0.0
                                   : std::numeric_limits<double>::min();
        if (!(from >= min_allowed))
            throw std::domain_error("SweepSpec: sweep bounds must be positive "
                                    "(P may start at 0)");
        if (spacing == Spacing::log && !(from > 0.0))
            throw std::domain_error("SweepSpec: log spacing requires from > 0");
    }
};

inline const char* to_string(SweepSpec::Variable v) {
    switch (v) {
        case SweepSpec::Variable::d: return "d";
        case SweepSpec::Variable::P: return "P";
        default: return "beta_rho";
    }
}

/// Ranges and parameter sets for the four standard figure datasets. The
/// defaults mirror the published curves; everything is overridable from the
/// configuration file.
struct FigureParams {
    double fig1_d_min_um = 10.0;
    double fig1_d_max_um = 100.0;
    int fig1_points = 25;
    double fig1_rho_g_per_l = 5.0;
    std::vector<double> fig1_betarho_g_per_l = {1e4, 5e4, 2e5};

    double fig2_betarho_min_g_per_l = 1e2;
    double fig2_betarho_max_g_per_l = 1e6;
    int fig2_points = 41;
    std::vector<int> fig2_n_set = {1, 2, 4, 6};

    double fig34_p_max_atm = 0.5;
    int fig34_points = 26;
    std::vector<double> fig34_beta_set = {1e3, 1e4, 1e5};
};

struct ExperimentConfig {
    ChameleonModel model;
    GasSpec gas;
    PatchModel patch;
    double d_m = 30e-6;
    double point_pressure_atm = 0.0;
    SweepSpec sweep;
    std::set<Component> include = {Component::chameleon, Component::casimir,
                                   Component::electrostatic};
    RegimeThresholds thresholds;
    numerics::QuadratureSpec quad;
    double root_rel_tol = 1e-12;
    std::optional<double> plate_density_g_per_l; // enables the m_c*d validity check
    FigureParams figures;

    void validate() const {
        model.validate();
        gas.validate();
        patch.validate();
        if (!(d_m > 0.0)) throw std::domain_error("ExperimentConfig: d must be > 0");
        if (point_pressure_atm < 0.0)
            throw std::domain_error("ExperimentConfig: point pressure must be >= 0");
        sweep.validate();
        if (include.empty())
            throw std::domain_error("ExperimentConfig: include set must be non-empty");
        numerics::validate(quad);
        if (plate_density_g_per_l && !(*plate_density_g_per_l > 0.0))
            throw std::domain_error("ExperimentConfig: plate density must be > 0");
    }
};

struct PressureBreakdown {
    double chameleon_pn_cm2 = 0.0;
    double casimir_pn_cm2 = 0.0;
    double electrostatic_pn_cm2 = 0.0;
    double total_pn_cm2 = 0.0;
    Regime regime = Regime::algebraic;
    double m_b_d = 0.0;
    bool fully_screened = false;
    double oracle_ratio = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

// V_lin(phi0) - V_lin(phi_b) > 0; direct evaluation where it is well
// conditioned, the cancellation-free h-difference form as z -> 1.
inline double potential_drop(const ChameleonModel& model, const BulkState& bulk, double z,
                             double phi0_gev) {
    const double n = model.n;
    const double lam_4n = std::pow(model.lambda_gev, 4.0 + n);
    if (1.0 - z >= 1e-5) {
        const double drive = model.beta * bulk.rho_gev4 / model.m_pl_gev;
        return lam_4n * (std::pow(phi0_gev, -n) - std::pow(bulk.phi_b_gev, -n)) +
               drive * (phi0_gev - bulk.phi_b_gev);
    }
    return (1.0 - model.p()) * lam_4n / std::pow(bulk.phi_b_gev, n) *
           h_difference(model.p(), z, 1.0 - z);
}

} // namespace detail

/// All included pressure components at separation d and gas pressure P,
/// sharing one GasState. P = 0 routes the chameleon to the vacuum asymptote.
inline PressureBreakdown breakdown_at(const ExperimentConfig& config, double d_m,
                                      double p_atm) {
    config.validate();
    if (!(d_m > 0.0)) throw std::domain_error("breakdown_at: requires d > 0");
    const GasState gas = gas_state(config.gas, p_atm);
    PressureBreakdown out;
    if (config.include.count(Component::chameleon)) {
        const double d_nat = units::length_to_natural(d_m);
        if (p_atm == 0.0) {
            out.chameleon_pn_cm2 = units::pressure_natural_to_lab(
                vacuum_asymptotic_pressure(config.model, d_nat).value_gev4);
        } else {
            const double rho_nat = units::mass_density_to_natural(gas.rho_g_per_l);
            const BulkState bulk = bulk_state(config.model, rho_nat);
            out.m_b_d = bulk.m_b_gev * d_nat;
            out.regime = config.thresholds.classify(out.m_b_d);
            const auto profile = z_from_separation(config.model, bulk, d_nat,
                                                   config.thresholds, config.quad,
                                                   config.root_rel_tol);
            if (!profile) {
                out.fully_screened = true;
            } else {
                const auto pressure = pressure_from_z(config.model, bulk, profile->z);
                out.chameleon_pn_cm2 = units::pressure_natural_to_lab(pressure.value_gev4);
                out.oracle_ratio =
                    pressure.value_gev4 /
                    detail::potential_drop(config.model, bulk, profile->z, profile->phi0_gev);
            }
        }
    }
    if (config.include.count(Component::casimir))
        out.casimir_pn_cm2 = casimir_pressure(d_m, gas.eps_rel);
    if (config.include.count(Component::electrostatic))
        out.electrostatic_pn_cm2 =
            electrostatic_pressure(config.patch, d_m, gas.eps_rel, config.quad);
    out.total_pn_cm2 = out.chameleon_pn_cm2 + out.casimir_pn_cm2 + out.electrostatic_pn_cm2;
    return out;
}

/// Percentage reduction of the chameleon pressure at density rho relative to
/// the vacuum asymptote at the same separation, clamped to [0, 100].
inline double screening_percentage(const ChameleonModel& model, double rho_gev4,
                                   double d_inv_gev, const RegimeThresholds& thresholds = {},
                                   const numerics::QuadratureSpec& quad = {}) {
    if (!(rho_gev4 > 0.0))
        throw std::domain_error("screening_percentage: requires rho > 0");
    const double f_vac = vacuum_asymptotic_pressure(model, d_inv_gev).value_gev4;
    const double f = chameleon_pressure(model, rho_gev4, d_inv_gev, thresholds, quad).value_gev4;
    return std::clamp(100.0 * (1.0 - f / f_vac), 0.0, 100.0);
}

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

namespace detail {

inline std::vector<double> grid(double from, double to, int points, bool log_spacing) {
    std::vector<double> g(points);
    if (log_spacing) {
        const double la = std::log(from), lb = std::log(to);
        for (int i = 0; i < points; ++i)
            g[i] = std::exp(la + (lb - la) * i / (points - 1));
    } else {
        for (int i = 0; i < points; ++i)
            g[i] = from + (to - from) * i / (points - 1);
    }
    g.front() = from;
    g.back() = to;
    return g;
}

// Evaluate fn(i) for i in [0, count) on `threads` workers; fn writes only to
// its own index, so the result does not depend on scheduling.
template <class Fn>
void parallel_for_index(int count, int threads, Fn&& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

inline std::string compact_number_tag(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    std::string s(buf);
    for (auto& c : s)
        if (c == '+' || c == '.') c = '_';
    return s;
}

} // namespace detail

enum class FigureId { fig1, fig2, fig3, fig4 };

inline const char* to_string(FigureId f) {
    switch (f) {
        case FigureId::fig1: return "fig1";
        case FigureId::fig2: return "fig2";
        case FigureId::fig3: return "fig3";
        default: return "fig4";
    }
}

/// Deterministic CSV-ready rows for the standard figures; every value is
/// reproducible from breakdown_at / screening_percentage.
inline Table figure_dataset(FigureId which, const ExperimentConfig& config, int threads = 1) {
    config.validate();
    const FigureParams& fp = config.figures;
    Table table;
    switch (which) {
        case FigureId::fig1: {
            // chameleon pressure vs separation: vacuum curve, fixed-density
            // curve, and screening percentages for several beta*rho values
            table.columns = {"d_um", "F_vacuum_pn_cm2",
                             "F_rho" + detail::compact_number_tag(fp.fig1_rho_g_per_l) +
                                 "_pn_cm2"};
            for (double tag : fp.fig1_betarho_g_per_l)
                table.columns.push_back("screening_pct_brho" + detail::compact_number_tag(tag));
            const auto d_grid =
                detail::grid(fp.fig1_d_min_um, fp.fig1_d_max_um, fp.fig1_points, true);
            const double rho_nat = units::mass_density_to_natural(fp.fig1_rho_g_per_l);
            table.rows.resize(d_grid.size());
            detail::parallel_for_index(
                static_cast<int>(d_grid.size()), threads, [&](int i) {
                    const double d_um = d_grid[i];
                    const double d_nat = units::length_to_natural(d_um * 1e-6);
                    std::vector<Cell> row;
                    row.emplace_back(d_um);
                    row.emplace_back(units::pressure_natural_to_lab(
                        vacuum_asymptotic_pressure(config.model, d_nat).value_gev4));
                    row.emplace_back(units::pressure_natural_to_lab(
                        chameleon_pressure(config.model, rho_nat, d_nat, config.thresholds,
                                           config.quad)
                            .value_gev4));
                    for (double tag : fp.fig1_betarho_g_per_l) {
                        const double rho = tag / config.model.beta;
                        row.emplace_back(screening_percentage(
                            config.model, units::mass_density_to_natural(rho), d_nat,
                            config.thresholds, config.quad));
                    }
                    table.rows[i] = std::move(row);
                });
            break;
        }
        case FigureId::fig2: {
            // chameleon pressure at fixed separation vs beta*rho, one column
            // per potential exponent
            table.columns = {"beta_rho_g_per_l"};
            for (int n : fp.fig2_n_set)
                table.columns.push_back("F_n" + std::to_string(n) + "_pn_cm2");
            const auto br_grid = detail::grid(fp.fig2_betarho_min_g_per_l,
                                              fp.fig2_betarho_max_g_per_l, fp.fig2_points, true);
            const double d_nat = units::length_to_natural(config.d_m);
            table.rows.resize(br_grid.size());
            detail::parallel_for_index(
                static_cast<int>(br_grid.size()), threads, [&](int i) {
                    std::vector<Cell> row;
                    row.emplace_back(br_grid[i]);
                    for (int n : fp.fig2_n_set) {
                        ChameleonModel m = config.model;
                        m.n = n;
                        const double rho_nat =
                            units::mass_density_to_natural(br_grid[i] / m.beta);
                        row.emplace_back(units::pressure_natural_to_lab(
                            chameleon_pressure(m, rho_nat, d_nat, config.thresholds,
                                               config.quad)
                                .value_gev4));
                    }
                    table.rows[i] = std::move(row);
                });
            break;
        }
        case FigureId::fig3:
        case FigureId::fig4: {
            // change of pressure when the gap fills with gas, anchored at the
            // vacuum value; fig3 isolates the chameleon (plus the
            // electrostatic line), fig4 shows the total with a no-chameleon
            // baseline
            const bool total = which == FigureId::fig4;
            table.columns = {"p_atm"};
            for (double beta : fp.fig34_beta_set)
                table.columns.push_back(std::string(total ? "dTotal_beta" : "dF_chameleon_beta") +
                                        detail::compact_number_tag(beta));
            table.columns.push_back(total ? "dTotal_no_chameleon_pn_cm2"
                                          : "dF_electrostatic_pn_cm2");
            const auto p_grid = detail::grid(0.0, fp.fig34_p_max_atm, fp.fig34_points, false);
            const double d_nat = units::length_to_natural(config.d_m);
            const double f_vac = units::pressure_natural_to_lab(
                vacuum_asymptotic_pressure(config.model, d_nat).value_gev4);
            const double cas0 = casimir_pressure(config.d_m, 1.0);
            const double el0 = electrostatic_pressure(config.patch, config.d_m, 1.0, config.quad);
            table.rows.resize(p_grid.size());
            detail::parallel_for_index(
                static_cast<int>(p_grid.size()), threads, [&](int i) {
                    const double p_atm = p_grid[i];
                    const GasState gas = gas_state(config.gas, p_atm);
                    const double cas = casimir_pressure(config.d_m, gas.eps_rel);
                    const double el =
                        electrostatic_pressure(config.patch, config.d_m, gas.eps_rel,
                                               config.quad);
                    std::vector<Cell> row;
                    row.emplace_back(p_atm);
                    for (double beta : fp.fig34_beta_set) {
                        ChameleonModel m = config.model;
                        m.beta = beta;
                        double f_cham = f_vac;
                        if (p_atm > 0.0)
                            f_cham = units::pressure_natural_to_lab(
                                chameleon_pressure(
                                    m, units::mass_density_to_natural(gas.rho_g_per_l), d_nat,
                                    config.thresholds, config.quad)
                                    .value_gev4);
                        const double d_cham = f_cham - f_vac;
                        row.emplace_back(total ? d_cham + (cas - cas0) + (el - el0) : d_cham);
                    }
                    row.emplace_back(total ? (cas - cas0) + (el - el0) : el - el0);
                    table.rows[i] = std::move(row);
                });
            break;
        }
    }
    return table;
}

struct SensitivityResult {
    double delta_sigma_v = 0.0;
    double delta_d_m = 0.0;
};

/// Smallest joint sigma perturbation and smallest separation perturbation
/// whose electrostatic-pressure change (in vacuum) equals `target`, both
/// solved by bracketed root finding on the perturbation.
inline SensitivityResult sensitivity_requirements(const PatchModel& patch, double d_m,
                                                  double target_pn_cm2,
                                                  const numerics::QuadratureSpec& quad = {}) {
    patch.validate();
    if (!(d_m > 0.0)) throw std::domain_error("sensitivity_requirements: requires d > 0");
    if (!(target_pn_cm2 > 0.0))
        throw std::domain_error("sensitivity_requirements: requires target > 0");
    const double base = electrostatic_pressure(patch, d_m, 1.0, quad);

    auto sigma_change = [&](double ds) {
        PatchModel p = patch;
        p.sigma_l_v += ds;
        p.sigma_s_v += ds;
        return electrostatic_pressure(p, d_m, 1.0, quad) - base - target_pn_cm2;
    };
    double hi = 1e-9;
    while (sigma_change(hi) < 0.0) {
        hi *= 4.0;
        if (hi > 100.0)
            throw root_error("sensitivity_requirements: sigma target not reachable");
    }
    const double delta_sigma =
        numerics::find_root_bracketed(sigma_change, {0.0, hi, 1e-9, 200});

    auto d_change = [&](double dd) {
        return electrostatic_pressure(patch, d_m - dd, 1.0, quad) - base - target_pn_cm2;
    };
    hi = 1e-15;
    while (d_change(hi) < 0.0) {
        hi *= 4.0;
        if (hi > 0.5 * d_m)
            throw root_error("sensitivity_requirements: separation target not reachable");
    }
    const double delta_d = numerics::find_root_bracketed(d_change, {0.0, hi, 1e-9, 200});
    return {delta_sigma, delta_d};
}

} // namespace chamcas
