#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "oneq/linalg.hpp"

namespace oneq::cli {

inline constexpr const char* kVersion = "0.1.0";

using Cell = std::variant<double, long long, std::string>;

/// One tabular result: a header, metadata echoed into the output, rows.
struct Table {
    std::string command;
    std::uint64_t seed = 0;
    long long samples = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells) { rows.push_back(std::move(cells)); }
};

void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table);

/// "csv" or "json" per the --out flag.
void write_table(std::ostream& out, const Table& table, const std::string& format);

/// Split spec: "near" | "last:k" | comma-separated part-A indices.
oneq::BipartiteSplit parse_split(const std::string& spec, int total_qubits);

/// Alpha spec: a single value or "lo:hi:step".
std::vector<double> parse_alpha_grid(const std::string& spec);

}  // namespace oneq::cli
