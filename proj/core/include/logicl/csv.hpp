#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace logicl {

/// RFC 4180 row reader: comma-separated fields, double-quote quoting with ""
/// escapes, LF or CRLF row endings, newlines allowed inside quoted fields.
/// Malformed quoting raises Errc::ingest_error naming the row.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// Next row, or nullopt at end of input.
  std::optional<std::vector<std::string>> next_row();

  /// 1-based number of the last row returned.
  std::size_t row_number() const noexcept { return row_number_; }

 private:
  std::istream& in_;
  std::size_t row_number_ = 0;
};

/// Quotes the field only when it needs it.
std::string csv_escape(std::string_view field);

void write_csv_row(std::ostream& out, std::span<const std::string> fields);

}  // namespace logicl
