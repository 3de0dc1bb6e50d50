#pragma once

// Minimal CSV support: UTF-8 with optional BOM, LF or CRLF line endings,
// double-quoted fields with "" escapes. Quoted fields may not span lines.

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace roadstress::io {

struct CsvRow {
  std::size_t line = 0;  // 1-based line number in the source file
  std::vector<std::string> fields;
};

class CsvTable {
 public:
  /// Reads `path` and checks that its header equals `expected_header`.
  /// Throws InputError naming the file (and line) on any problem.
  static CsvTable read(const std::filesystem::path& path, std::span<const std::string_view> expected_header);
  static CsvTable parse(std::string_view text, std::string source_name,
                        std::span<const std::string_view> expected_header);

  const std::vector<CsvRow>& rows() const { return rows_; }

  std::string text(const CsvRow& row, std::size_t column) const;
  std::int64_t integer(const CsvRow& row, std::size_t column) const;
  double real(const CsvRow& row, std::size_t column) const;

 private:
  std::string table_location(const CsvRow& row, std::size_t column) const;
  [[noreturn]] void fail(const CsvRow& row, std::size_t column, const std::string& what) const;

  std::string source_;
  std::vector<std::string> header_;
  std::vector<CsvRow> rows_;
};

/// 6 significant digits, round-half-even on exact ties; "inf", "-inf",
/// "nan" for non-finite values.
std::string format_number(double value);

std::string escape_field(std::string_view field);

/// Writes one CSV record terminated by "\n".
void write_row(std::ostream& out, std::span<const std::string> fields);

}  // namespace roadstress::io
