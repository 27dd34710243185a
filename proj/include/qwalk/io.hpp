// Text I/O helpers: shortest round-trip number formatting, a minimal CSV
// table reader/writer, key=value config files and angle expressions.
#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

namespace qwalk::io {

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) {
    throw std::runtime_error("failed to format number");
  }
  return std::string(buf, end);
}

inline std::string trim(std::string_view s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double parse_double(std::string_view text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw std::invalid_argument("not a number: '" + t + "'");
  }
  return value;
}

inline int parse_int(std::string_view text) {
  const std::string t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw std::invalid_argument("not an integer: '" + t + "'");
  }
  return value;
}

/// Accepts a plain number or the forms "pi", "pi/4", "2*pi/3", "0.5*pi".
inline double parse_angle(std::string_view text) {
  std::string t = trim(text);
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }),
          t.end());
  const auto pi_pos = t.find("pi");
  if (pi_pos == std::string::npos) {
    return parse_double(t);
  }
  double factor = 1.0;
  if (pi_pos > 0) {
    if (t[pi_pos - 1] != '*') {
      throw std::invalid_argument("malformed angle: '" + t + "'");
    }
    factor = parse_double(std::string_view(t).substr(0, pi_pos - 1));
  }
  double divisor = 1.0;
  const std::string rest = t.substr(pi_pos + 2);
  if (!rest.empty()) {
    if (rest.front() != '/') {
      throw std::invalid_argument("malformed angle: '" + t + "'");
    }
    divisor = parse_double(std::string_view(rest).substr(1));
  }
  return factor * std::numbers::pi / divisor;
}

/// Table of string cells with a header; leading '#' lines are metadata.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw std::out_of_range("no column named '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
  }

  double number(std::size_t row, std::string_view name) const {
    return parse_double(rows.at(row).at(column(name)));
  }
};

inline void write_csv(std::ostream& out, const CsvTable& table) {
  for (const auto& [key, value] : table.metadata) {
    out << "# " << key << '=' << value << '\n';
  }
  auto write_line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  write_line(table.header);
  for (const auto& row : table.rows) {
    write_line(row);
  }
}

inline CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!have_header && line.front() == '#') {
      const std::string body = trim(std::string_view(line).substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) {
        table.metadata.emplace_back(body, "");
      } else {
        table.metadata.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
      }
      continue;
    }
    auto cells = split(line, ',');
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
    } else {
      if (cells.size() != table.header.size()) {
        throw std::runtime_error("CSV row has " + std::to_string(cells.size()) +
                                 " cells, header has " + std::to_string(table.header.size()));
      }
      table.rows.push_back(std::move(cells));
    }
  }
  if (!have_header) {
    throw std::runtime_error("CSV input has no header row");
  }
  return table;
}

inline CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  return read_csv(in);
}

/// key = value lines; '#' starts a comment. Later keys override earlier ones.
inline std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    }
    out[key] = trim(body.substr(eq + 1));
  }
  return out;
}

inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config '" + path + "'");
  }
  return parse_config(in);
}

}  // namespace qwalk::io
