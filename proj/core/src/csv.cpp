#include "sirus/csv.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "sirus/errors.hpp"

namespace sirus {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// One CSV record; quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_record(const std::string& line, int lineno) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      if (!field.empty() && !trim(field).empty())
        throw DataError("line " + std::to_string(lineno) + ": stray quote inside field");
      field.clear();
      quoted = true;
    } else if (c == ',') {
      out.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw DataError("line " + std::to_string(lineno) + ": unterminated quote");
  out.push_back(trim(field));
  return out;
}

}  // namespace

int RawTable::find_column(const std::string& name) const {
  for (int j = 0; j < ncol(); ++j)
    if (columns[j] == name) return j;
  return -1;
}

bool cell_missing(const std::string& cell) { return cell.empty() || cell == "NA"; }

bool parse_number(const std::string& cell, double& out) {
  const char* b = cell.data();
  const char* e = b + cell.size();
  if (b == e) return false;
  if (*b == '+') ++b;  // from_chars rejects a leading plus
  auto [ptr, ec] = std::from_chars(b, e, out, std::chars_format::general);
  return ec == std::errc() && ptr == e;
}

RawTable read_csv(std::istream& in) {
  RawTable t;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header && trim(line).empty()) continue;
    auto fields = split_record(line, lineno);
    if (!have_header) {
      t.columns = std::move(fields);
      for (std::size_t a = 0; a < t.columns.size(); ++a) {
        if (t.columns[a].empty()) throw DataError("empty header name");
        for (std::size_t b = a + 1; b < t.columns.size(); ++b)
          if (t.columns[a] == t.columns[b])
            throw DataError("duplicate column name: " + t.columns[a]);
      }
      have_header = true;
      continue;
    }
    if (trim(line).empty()) continue;  // blank data lines are skipped
    if (fields.size() != t.columns.size())
      throw DataError("line " + std::to_string(lineno) + ": expected " +
                      std::to_string(t.columns.size()) + " fields, got " +
                      std::to_string(fields.size()));
    t.rows.push_back(std::move(fields));
  }
  if (!have_header) throw DataError("empty input: no header row");
  return t;
}

RawTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return read_csv(in);
}

}  // namespace sirus
