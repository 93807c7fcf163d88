#pragma once

// RFC-4180-compatible CSV with a `#`-prefixed metadata preamble. Numbers are
// written with 17 significant digits so every double round-trips losslessly;
// identical inputs produce byte-identical output.

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "chamcas/experiment.hpp"

namespace chamcas::csv {

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string format_cell(const Cell& cell) {
    if (std::holds_alternative<double>(cell)) return format_number(std::get<double>(cell));
    return quote_if_needed(std::get<std::string>(cell));
}

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline void write_table(std::ostream& out, const Metadata& metadata, const Table& table) {
    for (const auto& [k, v] : metadata) out << "# " << k << "=" << v << "\n";
    for (size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << quote_if_needed(table.columns[i]);
    out << "\n";
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_cell(row[i]);
        out << "\n";
    }
}

} // namespace chamcas::csv
