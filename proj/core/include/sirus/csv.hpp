#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sirus {

// Raw tabular input: header names plus cell text, row-major.
// An empty cell or the literal "NA" marks a missing value.
struct RawTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int ncol() const { return static_cast<int>(columns.size()); }
  int nrow() const { return static_cast<int>(rows.size()); }
  // Index of a named column, -1 when absent.
  int find_column(const std::string& name) const;
};

bool cell_missing(const std::string& cell);
// Strict numeric parse of a full cell; returns false on any trailing text.
bool parse_number(const std::string& cell, double& out);

// First row is the header; delimiter ','; double quotes supported.
RawTable read_csv(std::istream& in);
RawTable read_csv_file(const std::string& path);

}  // namespace sirus
