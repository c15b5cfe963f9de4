#pragma once

#include <string>

#include "boss/types.hpp"

namespace boss {

// Strict CSV reader for numeric tables: comma separated, header row
// required, '.' decimal, UTF-8, no missing values. Parse failures carry
// line/column diagnostics.
Dataset read_csv(const std::string& path, const std::string& target);

// The full numeric table, column names in `names`.
struct CsvTable {
  std::vector<std::string> names;
  Matrix values;
};

CsvTable read_csv_table(const std::string& path);

}  // namespace boss
