#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace softwall::experiment {

/// Shortest decimal form that parses back to the same double; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_number(double value);

/// A CSV cell: a number (serialized with format_number), an integer or literal text.
using CsvCell = std::variant<double, std::int64_t, std::string>;

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  /// Throws std::invalid_argument unless the row has one cell per column.
  void add_row(std::vector<CsvCell> row);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<CsvCell>>& rows() const { return rows_; }
  std::size_t column(const std::string& name) const;

  /// Comma-separated text, '\n' line endings, header first.
  std::string to_string() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<CsvCell>> rows_;
};

std::string format_cell(const CsvCell& cell);

/// Writes table.to_string() to `path`; throws std::runtime_error naming the path on failure.
void emit_csv(const CsvTable& table, const std::string& path);

/// Writes text to `path`, creating parent directories.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace softwall::experiment
