// Acceptance suite: every release criterion evaluated at its stated
// tolerance, one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chamcas/background.hpp"
#include "chamcas/chameleon.hpp"
#include "chamcas/csv.hpp"
#include "chamcas/experiment.hpp"
#include "chamcas/units.hpp"

using namespace chamcas;

namespace {

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
    std::printf("%s criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", id, title,
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

struct Fit {
    double slope, intercept, r2;
};

Fit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (int i = 0; i < n; ++i) {
        const double r = y[i] - intercept - slope * x[i];
        ss_res += r * r;
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    return {slope, intercept, 1.0 - ss_res / ss_tot};
}

double rho_nat(double g_per_l) { return units::mass_density_to_natural(g_per_l); }

// 1. Unit anchor: 1/Lambda = 82 um within 1%.
void criterion_1() {
    const double lm_um = units::length_from_inverse_energy(2.4e-12) * 1e6;
    report(1, "unit anchor 1/Lambda = 82 um +- 1%", std::abs(lm_um / 82.0 - 1.0) <= 0.01,
           fmt("computed %.4f um", lm_um));
}

// 2. Vacuum chameleon pressure at n=4, beta=1e4, d=30 um within factor 2 of
//    0.2 pN/cm^2.
void criterion_2() {
    const ChameleonModel m;
    const double f = units::pressure_natural_to_lab(
        vacuum_asymptotic_pressure(m, units::length_to_natural(30e-6)).value_gev4);
    report(2, "vacuum chameleon pressure ~0.2 pN/cm^2 within factor 2",
           f >= 0.1 && f <= 0.4, fmt("computed %.4f pN/cm^2", f));
}

// 3. Casimir anchors: ideal value at 30 um within 5% of an independent
//    evaluation (~0.16 pN/cm^2); Xe at 0.5 atm reduces it by 0.02%..0.035%.
void criterion_3() {
    const long double h = 6.62607015e-34L, c = 299792458.0L;
    const long double pi = 3.14159265358979323846L;
    const long double hbarc = h / (2.0L * pi) * c;
    const long double d = 30e-6L;
    const double independent =
        static_cast<double>(pi * pi * hbarc / (240.0L * d * d * d * d) * 1e8L);
    const double computed = casimir_pressure(30e-6, 1.0);
    const bool ok_value = std::abs(computed / independent - 1.0) <= 0.05;

    const GasState gas = gas_state(GasSpec{}, 0.5);
    const double drop = 1.0 - casimir_pressure(30e-6, gas.eps_rel) / computed;
    const bool ok_drop = drop >= 0.0002 && drop <= 0.00035;
    report(3, "Casimir anchors (ideal value; Xe 0.5 atm decrease)", ok_value && ok_drop,
           fmt("value %.5f vs %.5f pN/cm^2, decrease %.5f%%", computed, independent,
               drop * 100.0));
}

// 4. Electrostatic anchor: full patch pressure within factor 2 of 2e3
//    pN/cm^2 and the long-wavelength term alone at 1.23e3 +- 1%.
void criterion_4() {
    const PatchModel patch;
    const double full = electrostatic_pressure(patch, 30e-6, 1.0);
    PatchModel long_only = patch;
    long_only.sigma_s_v = 0.0;
    const double first = electrostatic_pressure(long_only, 30e-6, 1.0);
    const bool ok = full >= 1e3 && full <= 4e3 && std::abs(first / 1.23e3 - 1.0) <= 0.01;
    report(4, "electrostatic anchor ~2e3 pN/cm^2; first term 1.23e3 +- 1%", ok,
           fmt("full %.1f, first term %.1f pN/cm^2", full, first));
}

// 5. Screening signature: chameleon pressure drop over P in [0, 0.5] atm of
//    Xe at least 0.05 pN/cm^2 for beta >= 1e4 (n=4, d=30 um).
void criterion_5() {
    bool ok = true;
    std::string detail;
    for (double beta : {1e4, 1e5}) {
        ExperimentConfig cfg;
        cfg.model.beta = beta;
        const double f0 = breakdown_at(cfg, 30e-6, 0.0).chameleon_pn_cm2;
        const double f5 = breakdown_at(cfg, 30e-6, 0.5).chameleon_pn_cm2;
        const double drop = f0 - f5;
        ok = ok && drop >= 0.05;
        detail += fmt("beta=%g: drop %.4f; ", beta, drop);
    }
    report(5, "chameleon drop over 0.5 atm Xe >= 0.05 pN/cm^2 for beta >= 1e4", ok, detail);
}

// 6. Opposite-sign signature over the same sweep: electrostatic change
//    positive and exactly linear in P, chameleon change <= 0 and monotone.
void criterion_6() {
    bool ok = true;
    std::string detail = "checked beta in {1e4, 1e5}, 26 points";
    const GasSpec gas;
    const PatchModel patch;
    const double el0 = electrostatic_pressure(patch, 30e-6, 1.0);
    for (double beta : {1e4, 1e5}) {
        ExperimentConfig cfg;
        cfg.model.beta = beta;
        double prev_cham = breakdown_at(cfg, 30e-6, 0.0).chameleon_pn_cm2;
        double slope = 0.0;
        for (int i = 1; i <= 25; ++i) {
            const double p = 0.5 * i / 25.0;
            const GasState gs = gas_state(gas, p);
            const double el_change = electrostatic_pressure(patch, 30e-6, gs.eps_rel) - el0;
            if (i == 1) slope = el_change / p;
            if (!(el_change > 0.0) || std::abs(el_change - slope * p) > 1e-9 * el_change) {
                ok = false;
                detail = fmt("electrostatic linearity broke at P=%.3f", p);
            }
            const double cham = breakdown_at(cfg, 30e-6, p).chameleon_pn_cm2;
            if (cham > prev_cham + 1e-12) {
                ok = false;
                detail = fmt("chameleon not monotone at P=%.3f (beta=%g)", p, beta);
            }
            prev_cham = cham;
        }
    }
    report(6, "electrostatic change positive and linear; chameleon change <= 0 monotone", ok,
           detail);
}

// 7. Scaling law: log-log slope of the vacuum pressure over d in [10,100] um
//    equals -2n/(n+2) within 1% for n in {1,2,4,6}.
void criterion_7() {
    bool ok = true;
    std::string detail;
    for (int n : {1, 2, 4, 6}) {
        ChameleonModel m;
        m.n = n;
        std::vector<double> xs, ys;
        for (int i = 0; i < 25; ++i) {
            const double d_um = 10.0 * std::pow(10.0, i / 24.0);
            const double d = units::length_to_natural(d_um * 1e-6);
            xs.push_back(std::log(d));
            ys.push_back(std::log(vacuum_asymptotic_pressure(m, d).value_gev4));
        }
        const Fit f = linear_fit(xs, ys);
        const double target = -2.0 * n / (n + 2.0);
        if (std::abs(f.slope / target - 1.0) > 0.01) ok = false;
        detail += fmt("n=%d: %.6f vs %.6f; ", n, f.slope, target);
    }
    report(7, "vacuum scaling-law slope -2n/(n+2) within 1%", ok, detail);
}

// 8. Oracle equivalence: parametric separation vs first-integral quadrature
//    within 1e-6 on z in {0.1..0.9} x n in {1,2,4,6}.
void criterion_8() {
    double worst = 0.0;
    for (int n : {1, 2, 4, 6}) {
        ChameleonModel m;
        m.n = n;
        m.mass_convention = MassConvention::linearized;
        const BulkState bulk = bulk_state(m, rho_nat(5.0));
        for (double z : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const double d_param = separation_from_z(m, bulk, z);
            const double d_oracle =
                oracle_separation(m, bulk, bulk.phi_b_gev * std::pow(z, m.p()));
            worst = std::max(worst, std::abs(d_param - d_oracle) / d_oracle);
        }
    }
    report(8, "parametric vs first-integral separation within 1e-6", worst < 1e-6,
           fmt("max relative difference %.3g", worst));
}

// 9. Exponential suppression: at fixed rho, ln F affine in d over
//    m_b d in [5,15] with R^2 > 0.999; slope scales with m_b under rho x 4
//    within 10%.
void criterion_9() {
    const ChameleonModel m;
    auto fit_at = [&](double rho_g_l) {
        const double rho = rho_nat(rho_g_l);
        const BulkState bulk = bulk_state(m, rho);
        std::vector<double> xs, ys;
        for (int i = 0; i <= 20; ++i) {
            const double mbd = 5.0 + 10.0 * i / 20.0;
            const double d = mbd / bulk.m_b_gev;
            xs.push_back(d);
            ys.push_back(std::log(chameleon_pressure(m, rho, d).value_gev4));
        }
        return std::make_pair(linear_fit(xs, ys), bulk.m_b_gev);
    };
    const auto [fit1, mb1] = fit_at(5.0);
    const auto [fit4, mb4] = fit_at(20.0);
    const double slope_ratio = fit4.slope / fit1.slope;
    const double mb_ratio = mb4 / mb1;
    const bool ok = fit1.r2 > 0.999 && fit4.r2 > 0.999 && fit1.slope < 0.0 &&
                    std::abs(slope_ratio / mb_ratio - 1.0) <= 0.10;
    report(9, "ln F affine in d (R^2 > 0.999), slope proportional to m_b (10%)", ok,
           fmt("R^2 %.6f/%.6f, slope ratio %.4f vs m_b ratio %.4f", fit1.r2, fit4.r2,
               slope_ratio, mb_ratio));
}

// 10. Round-trip and monotonicity grids across n in {1..8}.
void criterion_10() {
    bool ok = true;
    std::string detail = "n in {1..8}";
    double worst_rt = 0.0;
    for (int n = 1; n <= 8 && ok; ++n) {
        ChameleonModel m;
        m.n = n;
        const BulkState bulk = bulk_state(m, rho_nat(5.0));
        // z <-> d round trip under 1e-8
        for (double z : {1e-4, 1e-2, 0.3, 0.9, 1.0 - 1e-6}) {
            const double d = separation_from_z(m, bulk, z);
            const auto prof = z_from_separation(m, bulk, d);
            if (!prof) {
                ok = false;
                detail = fmt("n=%d: unexpected screening marker at z=%g", n, z);
                break;
            }
            worst_rt = std::max(worst_rt, std::abs(prof->z - z));
            if (std::abs(prof->z - z) >= 1e-8) {
                ok = false;
                detail = fmt("n=%d: round trip error %.3g at z=%g", n, std::abs(prof->z - z), z);
                break;
            }
        }
        if (!ok) break;
        // pressure monotone decreasing in d and rho
        const double d30 = units::length_to_natural(30e-6);
        double prev = 1e300;
        for (double d_um : {15.0, 30.0, 60.0, 90.0}) {
            const double f =
                chameleon_pressure(m, rho_nat(5.0), units::length_to_natural(d_um * 1e-6))
                    .value_gev4;
            if (!(f < prev)) {
                ok = false;
                detail = fmt("n=%d: pressure not decreasing in d", n);
            }
            prev = f;
        }
        prev = 1e300;
        for (double rho : {0.5, 2.0, 8.0, 32.0}) {
            const double f = chameleon_pressure(m, rho_nat(rho), d30).value_gev4;
            if (!(f < prev)) {
                ok = false;
                detail = fmt("n=%d: pressure not decreasing in rho", n);
            }
            prev = f;
        }
        // screening percentage non-decreasing in d and beta*rho
        double prev_s = -1.0;
        for (double d_um : {15.0, 30.0, 60.0, 90.0}) {
            const double s = screening_percentage(m, rho_nat(5.0),
                                                  units::length_to_natural(d_um * 1e-6));
            if (s < prev_s - 1e-9) {
                ok = false;
                detail = fmt("n=%d: screening%% not increasing in d", n);
            }
            prev_s = s;
        }
        prev_s = -1.0;
        for (double rho : {0.5, 2.0, 8.0, 32.0}) {
            const double s = screening_percentage(m, rho_nat(rho), d30);
            if (s < prev_s - 1e-9) {
                ok = false;
                detail = fmt("n=%d: screening%% not increasing in beta*rho", n);
            }
            prev_s = s;
        }
    }
    if (ok) detail += fmt("; worst round trip %.3g", worst_rt);
    report(10, "round-trip < 1e-8 and monotonicity grids", ok, detail);
}

// 11. Figure regression: fig1..fig4 byte-stable across runs and thread
//     counts; fig4 beta=1e5 anomaly reaches 0.01 pN/cm^2.
void criterion_11() {
    ExperimentConfig cfg;
    cfg.figures.fig1_points = 7;
    cfg.figures.fig2_points = 7;
    cfg.figures.fig34_points = 11;
    bool stable = true;
    double max_anomaly = 0.0;
    for (FigureId id : {FigureId::fig1, FigureId::fig2, FigureId::fig3, FigureId::fig4}) {
        auto render = [&](int threads) {
            std::ostringstream out;
            csv::write_table(out, {}, figure_dataset(id, cfg, threads));
            return out.str();
        };
        const std::string once = render(1);
        stable = stable && render(1) == once && render(4) == once;
        if (id == FigureId::fig4) {
            const Table t = figure_dataset(id, cfg, 1);
            size_t beta_col = 0;
            for (size_t c = 0; c < cfg.figures.fig34_beta_set.size(); ++c)
                if (cfg.figures.fig34_beta_set[c] == 1e5) beta_col = c + 1;
            const size_t base_col = t.columns.size() - 1;
            for (const auto& row : t.rows)
                max_anomaly = std::max(max_anomaly,
                                       std::abs(std::get<double>(row[beta_col]) -
                                                std::get<double>(row[base_col])));
        }
    }
    report(11, "figures byte-stable; fig4 beta=1e5 anomaly >= 0.01 pN/cm^2",
           stable && max_anomaly >= 0.01,
           fmt("stable=%s, max anomaly %.4f pN/cm^2", stable ? "yes" : "no", max_anomaly));
}

// 12. Sensitivity estimates for a 0.01 pN/cm^2 target at 50 mV patches.
void criterion_12() {
    const auto s = sensitivity_requirements(PatchModel{}, 30e-6, 0.01);
    const double dsig_uv = s.delta_sigma_v * 1e6;
    const double dd_nm = s.delta_d_m * 1e9;
    const bool ok = dsig_uv >= 0.1 && dsig_uv <= 20.0 && dd_nm >= 0.01 && dd_nm <= 3.0;
    report(12, "sigma stability 0.1-20 uV; separation stability <= ~3 nm", ok,
           fmt("delta sigma %.3f uV, delta d %.4f nm", dsig_uv, dd_nm));
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
