#include "roadstress/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "roadstress/errors.hpp"

namespace roadstress::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool split_record(std::string_view line, std::vector<std::string>& fields) {
  fields.clear();
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(ch);
      }
    } else if (ch == '"' && trim(current).empty()) {
      current.clear();
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      fields.push_back(was_quoted ? current : std::string(trim(current)));
      current.clear();
      was_quoted = false;
    } else {
      current.push_back(ch);
    }
  }
  if (quoted) return false;
  fields.push_back(was_quoted ? current : std::string(trim(current)));
  return true;
}

}  // namespace

CsvTable CsvTable::read(const std::filesystem::path& path, std::span<const std::string_view> expected_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string(), expected_header);
}

CsvTable CsvTable::parse(std::string_view text, std::string source_name,
                         std::span<const std::string_view> expected_header) {
  CsvTable table;
  table.source_ = std::move(source_name);
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  bool have_header = false;
  std::size_t line_no = 0;
  std::vector<std::string> fields;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (trim(line).empty()) continue;

    if (!split_record(line, fields)) {
      throw InputError(table.source_ + ":" + std::to_string(line_no) + ": unterminated quoted field");
    }
    if (!have_header) {
      have_header = true;
      bool matches = fields.size() == expected_header.size();
      for (std::size_t i = 0; matches && i < fields.size(); ++i) matches = fields[i] == expected_header[i];
      if (!matches) {
        std::string want;
        for (const auto h : expected_header) want += (want.empty() ? "" : ",") + std::string(h);
        throw InputError(table.source_ + ":" + std::to_string(line_no) + ": expected header '" + want + "'");
      }
      table.header_ = fields;
      continue;
    }
    if (fields.size() != table.header_.size()) {
      throw InputError(table.source_ + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(table.header_.size()) + " columns, found " + std::to_string(fields.size()));
    }
    table.rows_.push_back({line_no, fields});
  }
  if (!have_header) throw InputError(table.source_ + ": file is empty (missing header)");
  return table;
}

void CsvTable::fail(const CsvRow& row, std::size_t column, const std::string& what) const {
  throw InputError(table_location(row, column) + ": " + what);
}

std::string CsvTable::table_location(const CsvRow& row, std::size_t column) const {
  return source_ + ":" + std::to_string(row.line) + ": column '" + header_[column] + "'";
}

std::string CsvTable::text(const CsvRow& row, std::size_t column) const { return row.fields[column]; }

std::int64_t CsvTable::integer(const CsvRow& row, std::size_t column) const {
  const auto& s = row.fields[column];
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) fail(row, column, "not an integer: '" + s + "'");
  return value;
}

double CsvTable::real(const CsvRow& row, std::size_t column) const {
  const auto& s = row.fields[column];
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || !std::isfinite(value)) {
    fail(row, column, "not a finite number: '" + s + "'");
  }
  return value;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string escape_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << escape_field(fields[i]);
  }
  out << '\n';
}

}  // namespace roadstress::io
