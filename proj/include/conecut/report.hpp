#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace conecut::report {

// 17 significant digits; round-trips every double. Non-finite values print
// as "nan"/"inf".
std::string fmt_machine(double x);

// 9 significant digits, for human-readable tables.
std::string fmt_table(double x);

// Like fmt_machine, but non-finite values become JSON null.
std::string fmt_json_number(double x);

std::string json_escape(const std::string& s);

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Header plus one line per row, comma separators, LF endings, machine
// digits.
std::string to_csv(const Table& table);

// JSON array of row objects keyed by column name.
std::string to_json_rows(const Table& table);

// Aligned text with table digits.
std::string render_text(const Table& table);

} // namespace conecut::report
