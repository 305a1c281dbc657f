#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "framelab/cli/config.hpp"

namespace framelab::cli {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

/// Doubles are printed with 17 significant digits.
std::string format_double(double value);

std::string to_csv(const Table& table);
/// Array of records, one object per row.
std::string to_json(const Table& table);

/// Writes to `path` through a temporary file and rename; an empty path writes to `out`.
/// Throws IoError.
void emit(const Table& table, Format format, const std::string& path, std::ostream& out);

void write_atomically(const std::string& path, const std::string& contents);

}  // namespace framelab::cli
