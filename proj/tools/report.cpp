#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "oneq/negativity.hpp"

namespace oneq::cli {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string cell_text(const Cell& c) {
    if (std::holds_alternative<double>(c)) {
        return format_double(std::get<double>(c));
    }
    if (std::holds_alternative<long long>(c)) {
        return std::to_string(std::get<long long>(c));
    }
    return std::get<std::string>(c);
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') {
            out.push_back('\\');
        }
        out.push_back(ch);
    }
    return out;
}

std::string cell_json(const Cell& c) {
    if (std::holds_alternative<double>(c)) {
        const double v = std::get<double>(c);
        if (!std::isfinite(v)) {
            return "null";
        }
        return format_double(v);
    }
    if (std::holds_alternative<long long>(c)) {
        return std::to_string(std::get<long long>(c));
    }
    return "\"" + json_escape(std::get<std::string>(c)) + "\"";
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
    out << "# oneq " << kVersion << " command=" << table.command << " seed=" << table.seed
        << " samples=" << table.samples << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << table.columns[i] << (i + 1 < table.columns.size() ? "," : "\n");
    }
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << cell_text(row[i]) << (i + 1 < row.size() ? "," : "\n");
        }
    }
}

void write_json(std::ostream& out, const Table& table) {
    out << "{\n";
    out << "  \"tool\": \"oneq\",\n";
    out << "  \"version\": \"" << kVersion << "\",\n";
    out << "  \"command\": \"" << json_escape(table.command) << "\",\n";
    out << "  \"seed\": " << table.seed << ",\n";
    out << "  \"samples\": " << table.samples << ",\n";
    out << "  \"rows\": [\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << "    {";
        const auto& row = table.rows[r];
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
            out << "\"" << json_escape(table.columns[i]) << "\": " << cell_json(row[i]);
            if (i + 1 < row.size() && i + 1 < table.columns.size()) {
                out << ", ";
            }
        }
        out << "}" << (r + 1 < table.rows.size() ? "," : "") << "\n";
    }
    out << "  ]\n";
    out << "}\n";
}

void write_table(std::ostream& out, const Table& table, const std::string& format) {
    if (format == "csv") {
        write_csv(out, table);
    } else if (format == "json") {
        write_json(out, table);
    } else {
        throw std::invalid_argument("unknown output format: " + format);
    }
}

oneq::BipartiteSplit parse_split(const std::string& spec, int total_qubits) {
    if (spec == "near") {
        return oneq::near_equal_split(total_qubits - 1);
    }
    if (spec.rfind("last:", 0) == 0) {
        const int k = std::stoi(spec.substr(5));
        if (k < 1 || k >= total_qubits) {
            throw std::invalid_argument("split last:k needs 1 <= k < total qubits");
        }
        return oneq::BipartiteSplit::last_qubits(total_qubits, k);
    }
    std::vector<int> part;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) {
            part.push_back(std::stoi(tok));
        }
    }
    return oneq::BipartiteSplit(part, total_qubits);
}

std::vector<double> parse_alpha_grid(const std::string& spec) {
    const auto c1 = spec.find(':');
    if (c1 == std::string::npos) {
        return {std::stod(spec)};
    }
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos) {
        throw std::invalid_argument("alpha grid must be lo:hi:step");
    }
    const double lo = std::stod(spec.substr(0, c1));
    const double hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(spec.substr(c2 + 1));
    if (step <= 0.0 || hi < lo) {
        throw std::invalid_argument("bad alpha grid");
    }
    std::vector<double> grid;
    for (double a = lo; a <= hi + 1e-12; a += step) {
        grid.push_back(std::min(a, hi));
    }
    return grid;
}

}  // namespace oneq::cli
