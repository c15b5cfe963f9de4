#include "boss/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace boss {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& raw, int line, int col) {
  const std::string s = trim(raw);
  if (s.empty()) {
    throw invalid_data_error("csv: missing value at line " + std::to_string(line) +
                             ", column " + std::to_string(col));
  }
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw invalid_data_error("csv: cannot parse '" + s + "' at line " + std::to_string(line) +
                             ", column " + std::to_string(col));
  }
  return v;
}

}  // namespace

CsvTable read_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_data_error("csv: cannot open " + path);

  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw invalid_data_error("csv: empty file " + path);
  for (const std::string& h : split_line(line)) table.names.push_back(trim(h));
  const int ncol = static_cast<int>(table.names.size());
  if (ncol == 0) throw invalid_data_error("csv: empty header in " + path);

  std::vector<double> buf;
  int nrow = 0;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_line(line);
    if (static_cast<int>(fields.size()) != ncol) {
      throw invalid_data_error("csv: line " + std::to_string(lineno) + " has " +
                               std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(ncol));
    }
    for (int c = 0; c < ncol; ++c) buf.push_back(parse_number(fields[c], lineno, c + 1));
    ++nrow;
  }
  if (nrow == 0) throw invalid_data_error("csv: no data rows in " + path);

  table.values.resize(nrow, ncol);
  for (int r = 0; r < nrow; ++r) {
    for (int c = 0; c < ncol; ++c) table.values(r, c) = buf[r * ncol + c];
  }
  return table;
}

Dataset read_csv(const std::string& path, const std::string& target) {
  const CsvTable table = read_csv_table(path);
  int tcol = -1;
  for (size_t c = 0; c < table.names.size(); ++c) {
    if (table.names[c] == target) {
      tcol = static_cast<int>(c);
      break;
    }
  }
  if (tcol < 0) throw config_error("csv: target column '" + target + "' not found in " + path);
  if (table.names.size() < 2) throw invalid_data_error("csv: need at least one predictor");

  Dataset d;
  const int n = static_cast<int>(table.values.rows());
  const int p = static_cast<int>(table.names.size()) - 1;
  d.X.resize(n, p);
  d.y = table.values.col(tcol);
  for (int c = 0, w = 0; c < static_cast<int>(table.names.size()); ++c) {
    if (c == tcol) continue;
    d.X.col(w) = table.values.col(c);
    d.names.push_back(table.names[c]);
    ++w;
  }
  d.validate();
  return d;
}

}  // namespace boss
