// csv.hpp — plain numeric CSV ingest/export (comma separator, '.' decimal, no quoting).
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ecdm/paired_sample.hpp"

namespace ecdm {

struct CsvTable {
  std::vector<std::string> columns;  // empty when the file had no header
  Matrix data;
  bool had_header = false;
};

// Reads a numeric table. A header line is detected automatically: if any field of
// the first line fails strict numeric parsing, that line names the columns.
// Ragged rows or non-numeric data fields raise ArgumentError with the line number.
CsvTable read_csv(const std::string& path);

// Writes a matrix with 17-significant-digit values; optional header row.
void write_csv_matrix(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& columns = {});

// Reorders columns so the named ones form the leading block (in the given order)
// and everything else follows in file order. Returns the reordered matrix and the
// block-1 width. Requires a header; unknown or duplicated names raise ArgumentError.
std::pair<Matrix, Eigen::Index> split_by_names(
    const CsvTable& table, const std::vector<std::string>& block1_names);

}  // namespace ecdm
