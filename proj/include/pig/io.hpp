#pragma once

// CSV and JSON input/output for the command-line tool.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "pig/chain.hpp"
#include "pig/dirichlet_conc.hpp"
#include "pig/summary.hpp"

namespace pig {

/// Malformed input. line and column are 1-based; 0 means not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    std::string where;
    if (line > 0) where += "line " + std::to_string(line);
    if (column > 0) where += (where.empty() ? "" : ", ") + std::string("column ") + std::to_string(column);
    return where.empty() ? what : where + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool blank(std::string_view s) { return trim(s).empty(); }

/// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
inline std::vector<std::string> split_csv(std::string_view line, std::size_t line_no) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"' && trim(field).empty()) {
      quoted = true;
      was_quoted = true;
      field.clear();
    } else if (ch == ',') {
      out.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      field += ch;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  out.push_back(was_quoted ? field : std::string(trim(field)));
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos && detail::trim(s) == s) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline bool parse_int(std::string_view s, std::int64_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

/// Shortest decimal that reads back to exactly x.
inline std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::logic_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

inline std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  if (!lines.empty() && lines.front().starts_with("\xEF\xBB\xBF")) lines.front().erase(0, 3);
  return lines;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace detail

/// Counts table: a header row, then one row per unit whose first id_cols
/// cells are labels (joined with '|') and whose remaining cells are
/// nonnegative integers. Blank lines are skipped.
inline CountMatrix parse_counts_csv(std::istream& in, std::size_t id_cols) {
  const auto lines = detail::read_lines(in);
  std::size_t first = 0;
  while (first < lines.size() && detail::blank(lines[first])) ++first;
  if (first == lines.size()) throw ParseError("counts file is empty (a header row is required)");
  const auto header = detail::split_csv(lines[first], first + 1);
  if (header.size() <= id_cols) {
    throw ParseError("header has " + std::to_string(header.size()) + " columns but --id-cols is " +
                         std::to_string(id_cols) + "; no count columns remain",
                     first + 1);
  }
  const std::size_t kc = header.size() - id_cols;
  std::vector<std::string> categories(header.begin() + static_cast<std::ptrdiff_t>(id_cols), header.end());
  std::vector<std::string> units;
  std::vector<std::int64_t> flat;
  for (std::size_t i = first + 1; i < lines.size(); ++i) {
    if (detail::blank(lines[i])) continue;
    const std::size_t line_no = i + 1;
    const auto cells = detail::split_csv(lines[i], line_no);
    if (cells.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " cells, found " +
                           std::to_string(cells.size()),
                       line_no);
    }
    std::string label;
    for (std::size_t j = 0; j < id_cols; ++j) label += (j ? "|" : "") + cells[j];
    if (id_cols == 0) label = "unit_" + std::to_string(units.size() + 1);
    std::int64_t total = 0;
    for (std::size_t j = id_cols; j < cells.size(); ++j) {
      std::int64_t n = 0;
      if (!detail::parse_int(cells[j], n) || n < 0) {
        throw ParseError("cell '" + cells[j] + "' in column '" + header[j] +
                             "' is not a nonnegative integer",
                         line_no, j + 1);
      }
      flat.push_back(n);
      total += n;
    }
    if (total == 0) throw ParseError("unit '" + label + "' has all-zero counts", line_no);
    units.push_back(std::move(label));
  }
  const std::size_t m = units.size();
  return CountMatrix(m, kc, std::move(flat), std::move(units), std::move(categories));
}

inline CountMatrix parse_counts_csv(const std::string& path, std::size_t id_cols) {
  auto in = detail::open_input(path);
  return parse_counts_csv(in, id_cols);
}

/// One positive decimal per line. A first line that is not a number is
/// taken as a header; blank lines are skipped.
inline std::vector<double> parse_reals_csv(std::istream& in) {
  const auto lines = detail::read_lines(in);
  std::vector<double> out;
  bool seen_first = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::blank(lines[i])) continue;
    const std::string_view cell = detail::trim(lines[i]);
    double v = 0.0;
    const bool ok = detail::parse_double(cell, v);
    if (!seen_first) {
      seen_first = true;
      if (!ok) {
        bool numeric_looking = !cell.empty() && (std::isdigit(static_cast<unsigned char>(cell.front())) ||
                                                 cell.front() == '-' || cell.front() == '+' ||
                                                 cell.front() == '.');
        if (!numeric_looking) continue;
      }
    }
    if (!ok) throw ParseError("'" + std::string(cell) + "' is not a number", i + 1);
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw ParseError("observation " + std::string(cell) + " is not a finite positive number", i + 1);
    }
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("no observations");
  return out;
}

inline std::vector<double> parse_reals_csv(const std::string& path) {
  auto in = detail::open_input(path);
  return parse_reals_csv(in);
}

/// Header `iter,<name>...`, one row per retained draw, shortest
/// round-trip decimals (at most 17 significant digits).
inline void write_samples_csv(std::ostream& out, const PosteriorSamples& samples) {
  out << "iter";
  for (const auto& n : samples.names) out << ',' << detail::csv_field(n);
  out << '\n';
  for (std::size_t s = 0; s < samples.size(); ++s) {
    out << (s + 1);
    for (double v : samples.row(s)) out << ',' << detail::format_double(v);
    out << '\n';
  }
}

inline PosteriorSamples read_samples_csv(std::istream& in) {
  const auto lines = detail::read_lines(in);
  std::size_t first = 0;
  while (first < lines.size() && detail::blank(lines[first])) ++first;
  if (first == lines.size()) throw ParseError("samples file is empty");
  const auto header = detail::split_csv(lines[first], first + 1);
  if (header.size() < 2 || header.front() != "iter") {
    throw ParseError("samples header must be 'iter,<parameter>,...'", first + 1);
  }
  PosteriorSamples out;
  out.names.assign(header.begin() + 1, header.end());
  for (std::size_t i = first + 1; i < lines.size(); ++i) {
    if (detail::blank(lines[i])) continue;
    const auto cells = detail::split_csv(lines[i], i + 1);
    if (cells.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " cells, found " +
                           std::to_string(cells.size()),
                       i + 1);
    }
    std::int64_t iter = 0;
    if (!detail::parse_int(cells[0], iter)) throw ParseError("iter '" + cells[0] + "' is not an integer", i + 1, 1);
    for (std::size_t j = 1; j < cells.size(); ++j) {
      double v = 0.0;
      if (!detail::parse_double(cells[j], v) || !std::isfinite(v)) {
        throw ParseError("cell '" + cells[j] + "' is not a finite number", i + 1, j + 1);
      }
      out.draws.push_back(v);
    }
  }
  if (out.size() == 0) throw ParseError("samples file has no draws");
  return out;
}

inline PosteriorSamples read_samples_csv(const std::string& path) {
  auto in = detail::open_input(path);
  return read_samples_csv(in);
}

/// Writes counts with a single `unit` label column; parse_counts_csv(.., 1)
/// reads it back.
inline void write_counts_csv(std::ostream& out, const CountMatrix& counts) {
  out << "unit";
  for (const auto& c : counts.category_labels()) out << ',' << detail::csv_field(c);
  out << '\n';
  for (std::size_t m = 0; m < counts.units(); ++m) {
    out << detail::csv_field(counts.unit_labels()[m]);
    for (auto n : counts.row(m)) out << ',' << n;
    out << '\n';
  }
}

/// Long format `parameter,value`, one row per draw and parameter.
inline void write_long_csv(std::ostream& out, const PosteriorSamples& samples) {
  out << "parameter,value\n";
  for (std::size_t k = 0; k < samples.dims(); ++k) {
    const std::string name = detail::csv_field(samples.names[k]);
    for (std::size_t s = 0; s < samples.size(); ++s) {
      out << name << ',' << detail::format_double(samples.draws[s * samples.dims() + k]) << '\n';
    }
  }
}

/// Long format `category,value`; each consecutive block of K rows is one
/// simplex draw.
inline void write_predictive_csv(std::ostream& out, const std::vector<std::vector<double>>& draws,
                                 const std::vector<std::string>& categories) {
  out << "category,value\n";
  for (const auto& p : draws) {
    if (p.size() != categories.size()) throw std::invalid_argument("write_predictive_csv: label count mismatch");
    for (std::size_t k = 0; k < p.size(); ++k) {
      out << detail::csv_field(categories[k]) << ',' << detail::format_double(p[k]) << '\n';
    }
  }
}

/// Grid density as `alpha,density`.
inline void write_density_csv(std::ostream& out, const GridDensity& d) {
  out << "alpha,density\n";
  for (std::size_t i = 0; i < d.grid.size(); ++i) {
    out << detail::format_double(d.grid[i]) << ',' << detail::format_double(d.density[i]) << '\n';
  }
}

inline nlohmann::ordered_json to_json(const ParameterSummary& p) {
  nlohmann::ordered_json j;
  j["parameter"] = p.parameter;
  j["mean"] = p.mean;
  j["sd"] = p.sd;
  j["q025"] = p.q025;
  j["q25"] = p.q25;
  j["q50"] = p.q50;
  j["q75"] = p.q75;
  j["q975"] = p.q975;
  j["mcse"] = p.mcse ? nlohmann::ordered_json(*p.mcse) : nlohmann::ordered_json(nullptr);
  j["ess"] = p.ess ? nlohmann::ordered_json(*p.ess) : nlohmann::ordered_json(nullptr);
  j["draws"] = p.draws;
  return j;
}

/// {"summary": [per-parameter objects], "meta": meta}
inline std::string summary_json(const SummaryReport& report, const nlohmann::ordered_json& meta) {
  nlohmann::ordered_json doc;
  doc["summary"] = nlohmann::ordered_json::array();
  for (const auto& p : report.parameters) doc["summary"].push_back(to_json(p));
  doc["meta"] = meta;
  return doc.dump(2) + "\n";
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace pig
