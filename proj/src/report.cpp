#include "conecut/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace conecut::report {

namespace {

std::string fmt(double x, const char* format) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

std::string cell_string(const Cell& cell, bool machine) {
    if (std::holds_alternative<std::int64_t>(cell)) {
        return std::to_string(std::get<std::int64_t>(cell));
    }
    if (std::holds_alternative<double>(cell)) {
        const double x = std::get<double>(cell);
        return machine ? fmt_machine(x) : fmt_table(x);
    }
    return std::get<std::string>(cell);
}

std::string cell_json(const Cell& cell) {
    if (std::holds_alternative<std::int64_t>(cell)) {
        return std::to_string(std::get<std::int64_t>(cell));
    }
    if (std::holds_alternative<double>(cell)) {
        return fmt_json_number(std::get<double>(cell));
    }
    return "\"" + json_escape(std::get<std::string>(cell)) + "\"";
}

} // namespace

std::string fmt_machine(double x) { return fmt(x, "%.17g"); }

std::string fmt_table(double x) { return fmt(x, "%.9g"); }

std::string fmt_json_number(double x) {
    if (!std::isfinite(x)) return "null";
    return fmt_machine(x);
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string to_csv(const Table& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0) out << ",";
        out << table.columns[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ",";
            out << cell_string(row[i], /*machine=*/true);
        }
        out << "\n";
    }
    return out.str();
}

std::string to_json_rows(const Table& table) {
    std::ostringstream out;
    out << "[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (r > 0) out << ",";
        out << "{";
        for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
            if (i > 0) out << ",";
            out << "\"" << json_escape(table.columns[i])
                << "\":" << cell_json(table.rows[r][i]);
        }
        out << "}";
    }
    out << "]";
    return out.str();
}

std::string render_text(const Table& table) {
    std::vector<std::size_t> widths(table.columns.size(), 0);
    std::vector<std::vector<std::string>> cells;
    cells.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        widths[i] = table.columns[i].size();
    }
    for (const auto& row : table.rows) {
        std::vector<std::string> line;
        line.reserve(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) {
            line.push_back(cell_string(row[i], /*machine=*/false));
            widths[i] = std::max(widths[i], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    std::ostringstream out;
    const auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i > 0) out << "  ";
            out << line[i];
            if (i + 1 < line.size()) {
                out << std::string(widths[i] - line[i].size(), ' ');
            }
        }
        out << "\n";
    };
    emit(table.columns);
    for (const auto& line : cells) emit(line);
    return out.str();
}

} // namespace conecut::report
