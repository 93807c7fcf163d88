// chamcas command-line tool: point evaluations, sweeps, figure datasets, the
// separation cross-check table, and sensitivity estimates, all emitted as CSV
// with a metadata preamble echoing the fully resolved configuration.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 I/O.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chamcas/background.hpp"
#include "chamcas/chameleon.hpp"
#include "chamcas/config.hpp"
#include "chamcas/csv.hpp"
#include "chamcas/errors.hpp"
#include "chamcas/experiment.hpp"
#include "chamcas/units.hpp"
#include "chamcas/version.hpp"

namespace {

using namespace chamcas;

struct CommonArgs {
    std::string config_path;
    std::string output_path; // empty = stdout
    std::vector<std::string> overrides;
    int threads = 1;
    std::string plot_script_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-c,--config", args.config_path, "configuration file (key=value)");
    cmd->add_option("-o,--output", args.output_path, "output CSV path (default: stdout)");
    cmd->add_option("-s,--set", args.overrides, "override a configuration key (key=value)")
        ->take_all();
    cmd->add_option("--threads", args.threads, "worker threads for sweep points")
        ->check(CLI::Range(1, 256));
    cmd->add_option("--plot-script", args.plot_script_path,
                    "also write a gnuplot script for the CSV (requires -o)");
}

std::string read_config_text(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw io_error("cannot open configuration file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

csv::Metadata base_metadata(const std::string& command, const ExperimentConfig& cfg) {
    csv::Metadata meta;
    meta.emplace_back("chamcas_version", version_string);
    meta.emplace_back("command", command);
    meta.emplace_back("config_hash", config::config_hash(cfg));
    meta.emplace_back("screening_baseline", "vacuum_asymptote");
    if (cfg.plate_density_g_per_l) {
        const double m_c = bulk_state(cfg.model,
                                      units::mass_density_to_natural(*cfg.plate_density_g_per_l))
                               .m_b_gev;
        const double m_c_d = m_c * units::length_to_natural(cfg.d_m);
        meta.emplace_back("plate_mc_d", csv::format_number(m_c_d));
        if (m_c_d < 10.0)
            meta.emplace_back("warning",
                              "plate_mc_d < 10: field does not fully relax inside the plates; "
                              "zero-field boundary condition is marginal");
    }
    for (const auto& [k, v] : config::resolved_entries(cfg)) meta.emplace_back(k, v);
    return meta;
}

std::vector<std::string> breakdown_columns() {
    return {"d_um",         "p_atm",       "chameleon_pn_cm2", "casimir_pn_cm2",
            "electrostatic_pn_cm2", "total_pn_cm2", "regime",           "m_b_d",
            "fully_screened",       "oracle_ratio"};
}

std::vector<Cell> breakdown_row(const ExperimentConfig& cfg, double d_m, double p_atm) {
    const PressureBreakdown b = breakdown_at(cfg, d_m, p_atm);
    std::vector<Cell> row;
    row.emplace_back(d_m * 1e6);
    row.emplace_back(p_atm);
    row.emplace_back(b.chameleon_pn_cm2);
    row.emplace_back(b.casimir_pn_cm2);
    row.emplace_back(b.electrostatic_pn_cm2);
    row.emplace_back(b.total_pn_cm2);
    row.emplace_back(std::string(to_string(b.regime)));
    row.emplace_back(b.m_b_d);
    row.emplace_back(static_cast<double>(b.fully_screened ? 1 : 0));
    row.emplace_back(b.oracle_ratio);
    return row;
}

Table run_point(const ExperimentConfig& cfg) {
    Table t;
    t.columns = breakdown_columns();
    t.rows.push_back(breakdown_row(cfg, cfg.d_m, cfg.point_pressure_atm));
    return t;
}

std::vector<double> experiment_grid(const SweepSpec& sw) {
    return chamcas::detail::grid(sw.from, sw.to, sw.points,
                                 sw.spacing == SweepSpec::Spacing::log);
}

Table run_sweep(const ExperimentConfig& cfg, int threads) {
    const SweepSpec& sw = cfg.sweep;
    const auto grid = experiment_grid(sw);
    Table t;
    const bool beta_rho = sw.variable == SweepSpec::Variable::beta_rho;
    if (beta_rho) t.columns.push_back("beta_rho_g_per_l");
    const auto cols = breakdown_columns();
    t.columns.insert(t.columns.end(), cols.begin(), cols.end());
    t.rows.resize(grid.size());
    chamcas::detail::parallel_for_index(static_cast<int>(grid.size()), threads, [&](int i) {
        double d_m = cfg.d_m;
        double p_atm = cfg.point_pressure_atm;
        std::vector<Cell> row;
        switch (sw.variable) {
            case SweepSpec::Variable::d:
                d_m = grid[i] * 1e-6;
                break;
            case SweepSpec::Variable::P:
                p_atm = grid[i];
                break;
            case SweepSpec::Variable::beta_rho: {
                const double rho = grid[i] / cfg.model.beta;
                p_atm = rho / cfg.gas.density_coeff_g_per_l_atm;
                row.emplace_back(grid[i]);
                break;
            }
        }
        auto rest = breakdown_row(cfg, d_m, p_atm);
        row.insert(row.end(), rest.begin(), rest.end());
        t.rows[i] = std::move(row);
    });
    return t;
}

Table run_oracle(const ExperimentConfig& cfg) {
    // parametric separation vs first-integral quadrature, linearized mass
    ChameleonModel model = cfg.model;
    model.mass_convention = MassConvention::linearized;
    const double rho_nat = units::mass_density_to_natural(cfg.figures.fig1_rho_g_per_l);
    Table t;
    t.columns = {"n", "z", "d_parametric_um", "d_first_integral_um", "rel_diff"};
    for (int n : cfg.figures.fig2_n_set) {
        ChameleonModel m = model;
        m.n = n;
        const BulkState bulk = bulk_state(m, rho_nat);
        for (double z : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const double d_param = separation_from_z(m, bulk, z, cfg.quad);
            const double d_oracle =
                oracle_separation(m, bulk, bulk.phi_b_gev * std::pow(z, m.p()), cfg.quad);
            std::vector<Cell> row;
            row.emplace_back(static_cast<double>(n));
            row.emplace_back(z);
            row.emplace_back(units::length_from_natural(d_param) * 1e6);
            row.emplace_back(units::length_from_natural(d_oracle) * 1e6);
            row.emplace_back(std::abs(d_param - d_oracle) / d_oracle);
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

Table run_sensitivity(const ExperimentConfig& cfg, double target_pn_cm2) {
    const SensitivityResult s =
        sensitivity_requirements(cfg.patch, cfg.d_m, target_pn_cm2, cfg.quad);
    Table t;
    t.columns = {"d_um",          "sigma_l_mv",  "sigma_s_mv", "target_pn_cm2",
                 "delta_sigma_uv", "delta_d_nm"};
    std::vector<Cell> row;
    row.emplace_back(cfg.d_m * 1e6);
    row.emplace_back(cfg.patch.sigma_l_v * 1e3);
    row.emplace_back(cfg.patch.sigma_s_v * 1e3);
    row.emplace_back(target_pn_cm2);
    row.emplace_back(s.delta_sigma_v * 1e6);
    row.emplace_back(s.delta_d_m * 1e9);
    t.rows.push_back(std::move(row));
    return t;
}

void write_plot_script(const std::string& script_path, const std::string& csv_path,
                       const Table& table) {
    if (csv_path.empty())
        throw config_error("--plot-script requires -o/--output so the script can name the CSV");
    std::ofstream out(script_path);
    if (!out) throw io_error("cannot write plot script '" + script_path + "'");
    out << "# gnuplot script generated by chamcas " << version_string << "\n";
    out << "set datafile separator ','\n";
    out << "set datafile commentschars '#'\n";
    out << "set key autotitle columnhead\n";
    out << "set xlabel '" << table.columns.front() << "'\n";
    out << "plot";
    for (size_t i = 1; i < table.columns.size(); ++i)
        out << (i > 1 ? ", \\\n    " : " ") << "'" << csv_path << "' using 1:" << (i + 1)
            << " with linespoints";
    out << "\n";
    if (!out) throw io_error("failed writing plot script '" + script_path + "'");
}

int emit(const CommonArgs& args, const std::string& command, const ExperimentConfig& cfg,
         const Table& table) {
    const csv::Metadata meta = base_metadata(command, cfg);
    std::ostringstream buffer;
    csv::write_table(buffer, meta, table);
    if (args.output_path.empty()) {
        std::cout << buffer.str();
        if (!std::cout) throw io_error("failed writing to standard output");
    } else {
        std::ofstream out(args.output_path, std::ios::binary);
        if (!out) throw io_error("cannot open output file '" + args.output_path + "'");
        out << buffer.str();
        if (!out) throw io_error("failed writing output file '" + args.output_path + "'");
    }
    if (!args.plot_script_path.empty())
        write_plot_script(args.plot_script_path, args.output_path, table);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chameleon, Casimir and electrostatic patch pressures between parallel "
                 "plates as a function of separation and gas density"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string figure_id;
    double sensitivity_target = 0.01;

    CLI::App* point = app.add_subcommand("point", "pressure breakdown at one (d, P) point");
    add_common(point, args);
    CLI::App* sweep = app.add_subcommand("sweep", "pressure breakdown along the configured sweep");
    add_common(sweep, args);
    CLI::App* figure = app.add_subcommand("figure", "standard figure dataset (fig1..fig4)");
    figure->add_option("id", figure_id, "which figure: fig1, fig2, fig3 or fig4")->required();
    add_common(figure, args);
    CLI::App* oracle =
        app.add_subcommand("oracle", "parametric vs first-integral separation cross-check");
    add_common(oracle, args);
    CLI::App* sensitivity = app.add_subcommand(
        "sensitivity", "required sigma and separation stability for a target pressure change");
    sensitivity->add_option("--target-pn-cm2", sensitivity_target,
                            "pressure-change target in pN/cm^2");
    add_common(sensitivity, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const std::string text = read_config_text(args.config_path);
        const ExperimentConfig cfg = chamcas::config::parse_config(text, args.overrides);
        if (point->parsed()) return emit(args, "point", cfg, run_point(cfg));
        if (sweep->parsed()) return emit(args, "sweep", cfg, run_sweep(cfg, args.threads));
        if (figure->parsed()) {
            FigureId id;
            if (figure_id == "fig1") id = FigureId::fig1;
            else if (figure_id == "fig2") id = FigureId::fig2;
            else if (figure_id == "fig3") id = FigureId::fig3;
            else if (figure_id == "fig4") id = FigureId::fig4;
            else throw config_error("unknown figure '" + figure_id +
                                    "' (expected fig1, fig2, fig3 or fig4)");
            return emit(args, "figure " + figure_id, cfg,
                        figure_dataset(id, cfg, args.threads));
        }
        if (oracle->parsed()) return emit(args, "oracle", cfg, run_oracle(cfg));
        if (sensitivity->parsed()) {
            if (!(sensitivity_target > 0.0))
                throw config_error("--target-pn-cm2 must be > 0");
            return emit(args, "sensitivity", cfg, run_sensitivity(cfg, sensitivity_target));
        }
        throw config_error("no subcommand selected");
    } catch (const chamcas::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const chamcas::io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}
