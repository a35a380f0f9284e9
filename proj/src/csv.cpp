// csv.cpp — strict numeric CSV parsing with line-numbered diagnostics.
#include "ecdm/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ecdm/errors.hpp"

namespace ecdm {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    const std::string_view raw = comma == std::string_view::npos
                                     ? line.substr(start)
                                     : line.substr(start, comma - start);
    fields.emplace_back(trim(raw));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

// Strict: the whole field must be one finite floating-point literal.
bool parse_number(const std::string& field, double& out) {
  if (field.empty()) return false;
  const char* first = field.data();
  const char* last = first + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError(path + ": cannot open file");

  CsvTable table;
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    std::vector<std::string> fields = split_fields(line);
    const bool first_content = rows.empty() && !table.had_header;

    if (first_content) {
      std::vector<double> values(fields.size());
      bool all_numeric = true;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (!parse_number(fields[i], values[i])) {
          all_numeric = false;
          break;
        }
      }
      width = fields.size();
      if (all_numeric) {
        rows.push_back(std::move(values));
      } else {
        table.had_header = true;
        table.columns = std::move(fields);
      }
      continue;
    }

    if (fields.size() != width) {
      throw ArgumentError(path + ": line " + std::to_string(line_no) +
                          ": expected " + std::to_string(width) +
                          " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> values(width);
    for (std::size_t i = 0; i < width; ++i) {
      if (!parse_number(fields[i], values[i])) {
        throw ArgumentError(path + ": line " + std::to_string(line_no) +
                            ", field " + std::to_string(i + 1) + ": '" +
                            fields[i] + "' is not a number");
      }
    }
    rows.push_back(std::move(values));
  }

  if (rows.empty()) {
    throw ArgumentError(path + ": no data rows");
  }

  table.data.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      table.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
    }
  }
  return table;
}

void write_csv_matrix(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& columns) {
  if (!columns.empty() &&
      static_cast<Eigen::Index>(columns.size()) != m.cols()) {
    throw ArgumentError(path + ": header width does not match the matrix");
  }
  std::ofstream out(path);
  if (!out) throw ArgumentError(path + ": cannot open for writing");
  if (!columns.empty()) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out << ',';
      out << columns[i];
    }
    out << '\n';
  }
  char buf[32];
  std::string line;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    line.clear();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) line += ',';
      std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
      line += buf;
    }
    line += '\n';
    out << line;
  }
  if (!out) throw Error(path + ": write failed");
}

std::pair<Matrix, Eigen::Index> split_by_names(
    const CsvTable& table, const std::vector<std::string>& block1_names) {
  if (!table.had_header) {
    throw ArgumentError(
        "column names were given but the file has no header row");
  }
  if (block1_names.empty()) {
    throw ArgumentError("the block-1 column list is empty");
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    for (std::size_t j = i + 1; j < table.columns.size(); ++j) {
      if (table.columns[i] == table.columns[j]) {
        throw ArgumentError("duplicate column name in header: '" +
                            table.columns[i] + "'");
      }
    }
  }

  std::vector<Eigen::Index> order;
  std::vector<bool> taken(table.columns.size(), false);
  for (const std::string& name : block1_names) {
    const auto it = std::find(table.columns.begin(), table.columns.end(), name);
    if (it == table.columns.end()) {
      throw ArgumentError("column '" + name + "' not found in header");
    }
    const auto idx = static_cast<std::size_t>(it - table.columns.begin());
    if (taken[idx]) {
      throw ArgumentError("column '" + name + "' listed twice");
    }
    taken[idx] = true;
    order.push_back(static_cast<Eigen::Index>(idx));
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (!taken[i]) order.push_back(static_cast<Eigen::Index>(i));
  }

  Matrix reordered(table.data.rows(), table.data.cols());
  for (std::size_t c = 0; c < order.size(); ++c) {
    reordered.col(static_cast<Eigen::Index>(c)) = table.data.col(order[c]);
  }
  return {std::move(reordered), static_cast<Eigen::Index>(block1_names.size())};
}

}  // namespace ecdm
