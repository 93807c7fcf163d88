#pragma once

// Flat key=value configuration with section-dotted keys and `#` comments.
//
// Every dimensioned key carries its unit in the key name (geometry.d_um,
// patch.sigma_l_mv, sweep.from_atm); bare unitless keys for dimensioned
// values do not exist, so a missing suffix surfaces as an unknown key with
// the suffixed spelling in the suggestion list. Unknown keys are hard
// errors. parse_config returns the fully resolved configuration; an ordered
// echo of every resolved key (defaults included) is available for output
// metadata and reproduces the run when fed back in.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chamcas/errors.hpp"
#include "chamcas/experiment.hpp"

namespace chamcas::config {

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= b.size(); ++j) {
            const size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

} // namespace detail

struct KeyValue {
    std::string key;
    std::string value;
    int line = 0; // 0 for command-line overrides
};

/// Split config text into key=value pairs; `#` starts a comment.
inline std::vector<KeyValue> tokenize(const std::string& text) {
    std::vector<KeyValue> pairs;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(line_no) +
                               ": expected key=value, got '" + line + "'");
        KeyValue kv{detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)),
                    line_no};
        if (kv.key.empty())
            throw config_error("config line " + std::to_string(line_no) + ": empty key");
        pairs.push_back(std::move(kv));
    }
    return pairs;
}

namespace detail {

inline std::string where(const KeyValue& kv) {
    return kv.line > 0 ? "'" + kv.key + "' (line " + std::to_string(kv.line) + ")"
                       : "'" + kv.key + "' (command-line override)";
}

inline double parse_double(const KeyValue& kv) {
    const char* s = kv.value.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw config_error(where(kv) + ": '" + kv.value + "' is not a number");
    return v;
}

inline int parse_int(const KeyValue& kv) {
    const char* s = kv.value.c_str();
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0')
        throw config_error(where(kv) + ": '" + kv.value + "' is not an integer");
    return static_cast<int>(v);
}

template <class T>
T parse_list_item(const KeyValue&, const std::string&);

inline std::vector<double> parse_double_list(const KeyValue& kv) {
    std::vector<double> out;
    for (const auto& item : split(kv.value, ',')) {
        KeyValue sub{kv.key, item, kv.line};
        out.push_back(parse_double(sub));
    }
    if (out.empty()) throw config_error(where(kv) + ": empty list");
    return out;
}

inline std::vector<int> parse_int_list(const KeyValue& kv) {
    std::vector<int> out;
    for (const auto& item : split(kv.value, ',')) {
        KeyValue sub{kv.key, item, kv.line};
        out.push_back(parse_int(sub));
    }
    if (out.empty()) throw config_error(where(kv) + ": empty list");
    return out;
}

} // namespace detail

/// Sweep bounds arrive with a unit suffix; remember which one was used so the
/// pairing with sweep.variable can be checked after all keys are read.
struct SweepBounds {
    std::optional<double> from_um, to_um, from_atm, to_atm, from_g_per_l, to_g_per_l;
};

struct Parsed {
    ExperimentConfig experiment;
    SweepBounds bounds;
    bool sweep_variable_set = false;
    bool sweep_spacing_set = false;
};

namespace detail {

struct KeyHandler {
    std::string name;
    std::function<void(const KeyValue&, Parsed&)> apply;
};

inline double require_positive(const KeyValue& kv, double v) {
    if (!(v > 0.0)) throw config_error(where(kv) + ": must be > 0");
    return v;
}

inline double require_non_negative(const KeyValue& kv, double v) {
    if (v < 0.0) throw config_error(where(kv) + ": must be >= 0");
    return v;
}

inline const std::vector<KeyHandler>& registry() {
    static const std::vector<KeyHandler> handlers = [] {
        std::vector<KeyHandler> h;
        auto add = [&](std::string name, std::function<void(const KeyValue&, Parsed&)> fn) {
            h.push_back({std::move(name), std::move(fn)});
        };

        add("model.n", [](const KeyValue& kv, Parsed& p) {
            const int n = parse_int(kv);
            if (n < 1) throw config_error(where(kv) + ": n must be >= 1");
            p.experiment.model.n = n;
        });
        add("model.beta", [](const KeyValue& kv, Parsed& p) {
            p.experiment.model.beta = require_positive(kv, parse_double(kv));
        });
        add("model.lambda_gev", [](const KeyValue& kv, Parsed& p) {
            p.experiment.model.lambda_gev = require_positive(kv, parse_double(kv));
        });
        add("model.m_pl_gev", [](const KeyValue& kv, Parsed& p) {
            p.experiment.model.m_pl_gev = require_positive(kv, parse_double(kv));
        });
        add("model.mass_convention", [](const KeyValue& kv, Parsed& p) {
            if (kv.value == "full")
                p.experiment.model.mass_convention = MassConvention::full;
            else if (kv.value == "linearized")
                p.experiment.model.mass_convention = MassConvention::linearized;
            else
                throw config_error(where(kv) + ": expected 'full' or 'linearized'");
        });

        add("gas.name", [](const KeyValue& kv, Parsed& p) { p.experiment.gas.name = kv.value; });
        add("gas.density_coeff_g_per_l_per_atm", [](const KeyValue& kv, Parsed& p) {
            p.experiment.gas.density_coeff_g_per_l_atm = require_positive(kv, parse_double(kv));
        });
        add("gas.polarizability_f_m2", [](const KeyValue& kv, Parsed& p) {
            p.experiment.gas.polarizability_f_m2 = require_positive(kv, parse_double(kv));
        });
        add("gas.temperature_k", [](const KeyValue& kv, Parsed& p) {
            p.experiment.gas.temperature_k = require_positive(kv, parse_double(kv));
        });

        add("patch.sigma_l_mv", [](const KeyValue& kv, Parsed& p) {
            p.experiment.patch.sigma_l_v = require_non_negative(kv, parse_double(kv)) * 1e-3;
        });
        add("patch.sigma_s_mv", [](const KeyValue& kv, Parsed& p) {
            p.experiment.patch.sigma_s_v = require_non_negative(kv, parse_double(kv)) * 1e-3;
        });
        add("patch.lambda_min_um", [](const KeyValue& kv, Parsed& p) {
            p.experiment.patch.lambda_min_m = require_positive(kv, parse_double(kv)) * 1e-6;
        });
        add("patch.lambda_max_um", [](const KeyValue& kv, Parsed& p) {
            p.experiment.patch.lambda_max_m = require_positive(kv, parse_double(kv)) * 1e-6;
        });

        add("geometry.d_um", [](const KeyValue& kv, Parsed& p) {
            p.experiment.d_m = require_positive(kv, parse_double(kv)) * 1e-6;
        });
        add("point.pressure_atm", [](const KeyValue& kv, Parsed& p) {
            p.experiment.point_pressure_atm = require_non_negative(kv, parse_double(kv));
        });
        add("plate.density_g_per_l", [](const KeyValue& kv, Parsed& p) {
            p.experiment.plate_density_g_per_l = require_positive(kv, parse_double(kv));
        });

        add("regime.algebraic_max_mbd", [](const KeyValue& kv, Parsed& p) {
            p.experiment.thresholds.algebraic_max = require_positive(kv, parse_double(kv));
        });
        add("regime.screened_min_mbd", [](const KeyValue& kv, Parsed& p) {
            p.experiment.thresholds.screened_min = require_positive(kv, parse_double(kv));
        });

        add("quadrature.rel_tol", [](const KeyValue& kv, Parsed& p) {
            p.experiment.quad.rel_tol = require_positive(kv, parse_double(kv));
        });
        add("quadrature.abs_tol", [](const KeyValue& kv, Parsed& p) {
            p.experiment.quad.abs_tol = require_non_negative(kv, parse_double(kv));
        });
        add("quadrature.max_levels", [](const KeyValue& kv, Parsed& p) {
            p.experiment.quad.max_levels = parse_int(kv);
        });
        add("root.rel_tol", [](const KeyValue& kv, Parsed& p) {
            p.experiment.root_rel_tol = require_positive(kv, parse_double(kv));
        });

        add("include", [](const KeyValue& kv, Parsed& p) {
            std::set<Component> inc;
            for (const auto& item : split(kv.value, ',')) {
                if (item == "chameleon")
                    inc.insert(Component::chameleon);
                else if (item == "casimir")
                    inc.insert(Component::casimir);
                else if (item == "electrostatic")
                    inc.insert(Component::electrostatic);
                else
                    throw config_error(where(kv) + ": unknown component '" + item +
                                       "' (expected chameleon, casimir, electrostatic)");
            }
            if (inc.empty()) throw config_error(where(kv) + ": include set must be non-empty");
            p.experiment.include = std::move(inc);
        });

        add("sweep.variable", [](const KeyValue& kv, Parsed& p) {
            if (kv.value == "d")
                p.experiment.sweep.variable = SweepSpec::Variable::d;
            else if (kv.value == "P")
                p.experiment.sweep.variable = SweepSpec::Variable::P;
            else if (kv.value == "beta_rho")
                p.experiment.sweep.variable = SweepSpec::Variable::beta_rho;
            else
                throw config_error(where(kv) + ": expected 'd', 'P' or 'beta_rho'");
            p.sweep_variable_set = true;
        });
        add("sweep.from_um", [](const KeyValue& kv, Parsed& p) {
            p.bounds.from_um = require_positive(kv, parse_double(kv));
        });
        add("sweep.to_um", [](const KeyValue& kv, Parsed& p) {
            p.bounds.to_um = require_positive(kv, parse_double(kv));
        });
        add("sweep.from_atm", [](const KeyValue& kv, Parsed& p) {
            p.bounds.from_atm = require_non_negative(kv, parse_double(kv));
        });
        add("sweep.to_atm", [](const KeyValue& kv, Parsed& p) {
            p.bounds.to_atm = require_positive(kv, parse_double(kv));
        });
        add("sweep.from_g_per_l", [](const KeyValue& kv, Parsed& p) {
            p.bounds.from_g_per_l = require_positive(kv, parse_double(kv));
        });
        add("sweep.to_g_per_l", [](const KeyValue& kv, Parsed& p) {
            p.bounds.to_g_per_l = require_positive(kv, parse_double(kv));
        });
        add("sweep.points", [](const KeyValue& kv, Parsed& p) {
            const int n = parse_int(kv);
            if (n < 2) throw config_error(where(kv) + ": points must be >= 2");
            p.experiment.sweep.points = n;
        });
        add("sweep.spacing", [](const KeyValue& kv, Parsed& p) {
            if (kv.value == "linear")
                p.experiment.sweep.spacing = SweepSpec::Spacing::linear;
            else if (kv.value == "log")
                p.experiment.sweep.spacing = SweepSpec::Spacing::log;
            else
                throw config_error(where(kv) + ": expected 'linear' or 'log'");
            p.sweep_spacing_set = true;
        });

        add("fig1.d_min_um", [](const KeyValue& kv, Parsed& p) {
            p.experiment.figures.fig1_d_min_um = require_positive(kv, parse_double(kv));
        });
        add("fig1.d_max_um", [](const KeyValue& kv, Parsed& p) {
            p.experiment.figures.fig1_d_max_um = require_positive(kv, parse_double(kv));
        });
        add("fig1.points", [](const KeyValue& kv, Parsed& p) {
            const int n = parse_int(kv);
            if (n < 2) throw config_error(where(kv) + ": points must be >= 2");
            p.experiment.figures.fig1_points = n;
        });
        add("fig1.rho_g_per_l", [](const KeyValue& kv, Parsed& p) {
            p.experiment.figures.fig1_rho_g_per_l = require_positive(kv, parse_double(kv));
        });
        add("fig1.betarho_g_per_l", [](const KeyValue& kv, Parsed& p) {
            auto vs = parse_double_list(kv);
            for (double v : vs)
                if (!(v > 0.0)) throw config_error(where(kv) + ": values must be > 0");
            p.experiment.figures.fig1_betarho_g_per_l = std::move(vs);
        });
        add("fig2.betarho_min_g_per_l", [](const KeyValue& kv, Parsed& p) {
            p.experiment.figures.fig2_betarho_min_g_per_l =
                require_positive(kv, parse_double(kv));
        });
        add("fig2.betarho_max_g_per_l", [](const KeyValue& kv, Parsed& p) {
            p.experiment.figures.fig2_betarho_max_g_per_l =
                require_positive(kv, parse_double(kv));
        });
        add("fig2.points", [](const KeyValue& kv, Parsed& p) {
            const int n = parse_int(kv);
            if (n < 2) throw config_error(where(kv) + ": points must be >= 2");
            p.experiment.figures.fig2_points = n;
        });
        add("fig2.n_set", [](const KeyValue& kv, Parsed& p) {
            auto ns = parse_int_list(kv);
            for (int n : ns)
                if (n < 1) throw config_error(where(kv) + ": n values must be >= 1");
            p.experiment.figures.fig2_n_set = std::move(ns);
        });
        add("fig34.p_max_atm", [](const KeyValue& kv, Parsed& p) {
            p.experiment.figures.fig34_p_max_atm = require_positive(kv, parse_double(kv));
        });
        add("fig34.points", [](const KeyValue& kv, Parsed& p) {
            const int n = parse_int(kv);
            if (n < 2) throw config_error(where(kv) + ": points must be >= 2");
            p.experiment.figures.fig34_points = n;
        });
        add("fig34.beta_set", [](const KeyValue& kv, Parsed& p) {
            auto bs = parse_double_list(kv);
            for (double b : bs)
                if (!(b > 0.0)) throw config_error(where(kv) + ": beta values must be > 0");
            p.experiment.figures.fig34_beta_set = std::move(bs);
        });
        return h;
    }();
    return handlers;
}

[[noreturn]] inline void unknown_key(const KeyValue& kv) {
    std::vector<std::pair<size_t, std::string>> ranked;
    for (const auto& h : registry())
        ranked.emplace_back(edit_distance(kv.key, h.name), h.name);
    std::sort(ranked.begin(), ranked.end());
    std::string msg = "unknown key " + where(kv) + "; closest known keys:";
    for (size_t i = 0; i < ranked.size() && i < 4; ++i) msg += " " + ranked[i].second;
    msg += " (dimensioned keys carry their unit suffix)";
    throw config_error(msg);
}

inline std::string lowercase(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return s;
}

inline void apply_pairs(const std::vector<KeyValue>& pairs, Parsed& parsed,
                        bool reject_duplicates) {
    std::map<std::string, int> seen;
    for (const auto& raw : pairs) {
        // keys are matched case-insensitively (patch.sigma_l_mV == ..._mv);
        // values keep their case
        KeyValue kv = raw;
        kv.key = lowercase(kv.key);
        const auto& handlers = registry();
        const auto it =
            std::find_if(handlers.begin(), handlers.end(),
                         [&](const KeyHandler& h) { return h.name == kv.key; });
        if (it == handlers.end()) unknown_key(kv);
        if (reject_duplicates) {
            const auto [prev, inserted] = seen.emplace(kv.key, kv.line);
            if (!inserted)
                throw config_error("duplicate key " + where(kv) + "; first set on line " +
                                   std::to_string(prev->second));
        }
        it->apply(kv, parsed);
    }
}

// Reconcile the suffixed sweep bounds with sweep.variable, filling
// per-variable defaults where nothing was given.
inline void resolve_sweep(Parsed& p) {
    auto reject = [&](const std::optional<double>& v, const char* key, const char* expect) {
        if (v)
            throw config_error(std::string("sweep bound '") + key +
                               "' does not match sweep.variable (expected " + expect + ")");
    };
    SweepSpec& sweep = p.experiment.sweep;
    const SweepBounds& b = p.bounds;
    switch (sweep.variable) {
        case SweepSpec::Variable::d: {
            reject(b.from_atm, "sweep.from_atm", "sweep.from_um");
            reject(b.to_atm, "sweep.to_atm", "sweep.to_um");
            reject(b.from_g_per_l, "sweep.from_g_per_l", "sweep.from_um");
            reject(b.to_g_per_l, "sweep.to_g_per_l", "sweep.to_um");
            sweep.from = b.from_um.value_or(10.0);
            sweep.to = b.to_um.value_or(100.0);
            if (!p.sweep_spacing_set) sweep.spacing = SweepSpec::Spacing::log;
            break;
        }
        case SweepSpec::Variable::P: {
            reject(b.from_um, "sweep.from_um", "sweep.from_atm");
            reject(b.to_um, "sweep.to_um", "sweep.to_atm");
            reject(b.from_g_per_l, "sweep.from_g_per_l", "sweep.from_atm");
            reject(b.to_g_per_l, "sweep.to_g_per_l", "sweep.to_atm");
            sweep.from = b.from_atm.value_or(0.0);
            sweep.to = b.to_atm.value_or(0.5);
            break;
        }
        case SweepSpec::Variable::beta_rho: {
            reject(b.from_um, "sweep.from_um", "sweep.from_g_per_l");
            reject(b.to_um, "sweep.to_um", "sweep.to_g_per_l");
            reject(b.from_atm, "sweep.from_atm", "sweep.from_g_per_l");
            reject(b.to_atm, "sweep.to_atm", "sweep.to_g_per_l");
            sweep.from = b.from_g_per_l.value_or(1e2);
            sweep.to = b.to_g_per_l.value_or(1e6);
            if (!p.sweep_spacing_set) sweep.spacing = SweepSpec::Spacing::log;
            break;
        }
    }
}

} // namespace detail

/// Parse configuration text plus command-line overrides ("key=value") into a
/// fully validated ExperimentConfig. An empty file yields the all-defaults
/// headline scenario.
inline ExperimentConfig parse_config(const std::string& text,
                                     const std::vector<std::string>& overrides = {}) {
    Parsed parsed;
    detail::apply_pairs(tokenize(text), parsed, /*reject_duplicates=*/true);
    std::vector<KeyValue> override_pairs;
    for (const auto& ov : overrides) {
        auto sub = tokenize(ov);
        if (sub.size() != 1)
            throw config_error("override '" + ov + "': expected a single key=value");
        sub.front().line = 0;
        override_pairs.push_back(sub.front());
    }
    detail::apply_pairs(override_pairs, parsed, /*reject_duplicates=*/false);
    detail::resolve_sweep(parsed);
    try {
        parsed.experiment.validate();
    } catch (const std::exception& e) {
        throw config_error(std::string("invalid configuration: ") + e.what());
    }
    return parsed.experiment;
}

namespace detail {

// Display value for a key whose parse path multiplies by `parse_factor`
// (e.g. patch.sigma_l_mv parses as value * 1e-3). The naive internal /
// parse_factor round trip can wobble by an ulp, so pick the display double
// whose parse lands exactly on the stored internal value.
inline std::string format_scaled(double internal, double parse_factor) {
    const double y0 = internal / parse_factor;
    for (int step : {0, 1, -1, 2, -2, 3, -3, 4, -4}) {
        double c = y0;
        const double dir = step > 0 ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity();
        for (int i = 0; i < std::abs(step); ++i) c = std::nextafter(c, dir);
        if (c * parse_factor == internal) return format_double(c);
    }
    return format_double(y0);
}

inline std::string join_doubles(const std::vector<double>& vs) {
    std::string s;
    for (size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + format_double(vs[i]);
    return s;
}

inline std::string join_ints(const std::vector<int>& vs) {
    std::string s;
    for (size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
    return s;
}

} // namespace detail

/// Ordered echo of the fully resolved configuration. Feeding these lines back
/// through parse_config reproduces the identical configuration.
inline std::vector<std::pair<std::string, std::string>> resolved_entries(
    const ExperimentConfig& c) {
    using detail::format_double;
    std::vector<std::pair<std::string, std::string>> out;
    auto put = [&](const char* k, std::string v) { out.emplace_back(k, std::move(v)); };

    put("model.n", std::to_string(c.model.n));
    put("model.beta", format_double(c.model.beta));
    put("model.lambda_gev", format_double(c.model.lambda_gev));
    put("model.m_pl_gev", format_double(c.model.m_pl_gev));
    put("model.mass_convention",
        c.model.mass_convention == MassConvention::full ? "full" : "linearized");
    put("gas.name", c.gas.name);
    put("gas.density_coeff_g_per_l_per_atm", format_double(c.gas.density_coeff_g_per_l_atm));
    put("gas.polarizability_f_m2", format_double(c.gas.polarizability_f_m2));
    put("gas.temperature_k", format_double(c.gas.temperature_k));
    put("patch.sigma_l_mv", detail::format_scaled(c.patch.sigma_l_v, 1e-3));
    put("patch.sigma_s_mv", detail::format_scaled(c.patch.sigma_s_v, 1e-3));
    put("patch.lambda_min_um", detail::format_scaled(c.patch.lambda_min_m, 1e-6));
    put("patch.lambda_max_um", detail::format_scaled(c.patch.lambda_max_m, 1e-6));
    put("geometry.d_um", detail::format_scaled(c.d_m, 1e-6));
    put("point.pressure_atm", format_double(c.point_pressure_atm));
    if (c.plate_density_g_per_l)
        put("plate.density_g_per_l", format_double(*c.plate_density_g_per_l));
    put("regime.algebraic_max_mbd", format_double(c.thresholds.algebraic_max));
    put("regime.screened_min_mbd", format_double(c.thresholds.screened_min));
    put("quadrature.rel_tol", format_double(c.quad.rel_tol));
    put("quadrature.abs_tol", format_double(c.quad.abs_tol));
    put("quadrature.max_levels", std::to_string(c.quad.max_levels));
    put("root.rel_tol", format_double(c.root_rel_tol));
    {
        std::string inc;
        for (Component comp : c.include) inc += (inc.empty() ? "" : ",") + std::string(to_string(comp));
        put("include", inc);
    }
    put("sweep.variable", to_string(c.sweep.variable));
    switch (c.sweep.variable) {
        case SweepSpec::Variable::d:
            put("sweep.from_um", format_double(c.sweep.from));
            put("sweep.to_um", format_double(c.sweep.to));
            break;
        case SweepSpec::Variable::P:
            put("sweep.from_atm", format_double(c.sweep.from));
            put("sweep.to_atm", format_double(c.sweep.to));
            break;
        case SweepSpec::Variable::beta_rho:
            put("sweep.from_g_per_l", format_double(c.sweep.from));
            put("sweep.to_g_per_l", format_double(c.sweep.to));
            break;
    }
    put("sweep.points", std::to_string(c.sweep.points));
    put("sweep.spacing",
        c.sweep.spacing == SweepSpec::Spacing::linear ? "linear" : "log");
    put("fig1.d_min_um", format_double(c.figures.fig1_d_min_um));
    put("fig1.d_max_um", format_double(c.figures.fig1_d_max_um));
    put("fig1.points", std::to_string(c.figures.fig1_points));
    put("fig1.rho_g_per_l", format_double(c.figures.fig1_rho_g_per_l));
    put("fig1.betarho_g_per_l", detail::join_doubles(c.figures.fig1_betarho_g_per_l));
    put("fig2.betarho_min_g_per_l", format_double(c.figures.fig2_betarho_min_g_per_l));
    put("fig2.betarho_max_g_per_l", format_double(c.figures.fig2_betarho_max_g_per_l));
    put("fig2.points", std::to_string(c.figures.fig2_points));
    put("fig2.n_set", detail::join_ints(c.figures.fig2_n_set));
    put("fig34.p_max_atm", format_double(c.figures.fig34_p_max_atm));
    put("fig34.points", std::to_string(c.figures.fig34_points));
    put("fig34.beta_set", detail::join_doubles(c.figures.fig34_beta_set));
    return out;
}

/// FNV-1a hash of the resolved configuration, for output metadata.
inline std::string config_hash(const ExperimentConfig& c) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ull;
        }
    };
    for (const auto& [k, v] : resolved_entries(c)) {
        mix(k);
        mix("=");
        mix(v);
        mix("\n");
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace chamcas::config
