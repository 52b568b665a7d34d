#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dmimo {

inline constexpr std::string_view kCsvSchemaVersion = "v1";

/// In-memory table written as CSV (with a `# dmimo-csv v1 kind=...` first
/// line) and mirrored as JSON.
class CsvTable {
 public:
  CsvTable(std::string kind, std::vector<std::string> columns);

  /// Cells are stored as text; use cell() for numbers.
  void add_row(std::vector<std::string> cells);

  const std::string& kind() const { return kind_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string to_csv() const;
  /// Array of objects keyed by column; numeric-looking cells become numbers.
  std::string to_json() const;

 private:
  std::string kind_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Shortest round-trip decimal text of `value`.
std::string cell(double value);
std::string cell(int value);
std::string cell(std::string_view value);

/// Writes `contents` to `path` through a temporary file in the same
/// directory and an atomic rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace dmimo
