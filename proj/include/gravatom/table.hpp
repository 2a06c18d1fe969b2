#pragma once

// Tabular output with a `# schema:` header, shared by every CLI command.
// Doubles are written in shortest round-trip form so identical inputs give
// byte-identical files.

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace gravatom {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Column {
  std::string name;
  std::string unit;  // empty for dimensionless or text
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::vector<Cell>> rows;

  void meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
  void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

[[nodiscard]] inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Scientific notation with `digits` significant digits.
[[nodiscard]] inline std::string format_double_sci(double v, int digits = 6) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, digits - 1);
  return std::string(buf, res.ptr);
}

/// "[a, b, c]" in scientific notation.
[[nodiscard]] inline std::string format_list(const std::vector<double>& v, int digits = 6) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double_sci(v[i], digits);
  return s + "]";
}

[[nodiscard]] inline std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

[[nodiscard]] inline std::string schema_line(const Table& t) {
  std::string s = "# schema:";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    s += (i == 0 ? " " : ", ");
    s += t.columns[i].name;
    if (!t.columns[i].unit.empty()) s += " [" + t.columns[i].unit + "]";
  }
  return s;
}

inline void write_csv(std::ostream& os, const Table& t) {
  os << schema_line(t) << '\n';
  for (const auto& [k, v] : t.metadata) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i].name;
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << '\n';
  }
}

inline void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json j;
  j["schema"] = nlohmann::ordered_json::array();
  for (const auto& c : t.columns) j["schema"].push_back({{"name", c.name}, {"unit", c.unit}});
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.metadata) j["metadata"][k] = v;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
      std::visit([&](const auto& v) { r[t.columns[i].name] = v; }, row[i]);
    }
    j["rows"].push_back(std::move(r));
  }
  os << j.dump(2) << '\n';
}

}  // namespace gravatom
