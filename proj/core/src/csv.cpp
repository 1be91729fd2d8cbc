#include "logicl/csv.hpp"

#include "logicl/errors.hpp"

namespace logicl {

std::optional<std::vector<std::string>> CsvReader::next_row() {
  int first = in_.peek();
  if (first == std::istream::traits_type::eof()) return std::nullopt;

  ++row_number_;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;  // closing quote seen; only , or row end may follow

  while (true) {
    const int raw = in_.get();
    if (raw == std::istream::traits_type::eof()) {
      if (quoted) {
        raise(Errc::ingest_error,
              "unterminated quoted field (row " + std::to_string(row_number_) + ")");
      }
      fields.push_back(std::move(field));
      return fields;
    }
    const char ch = static_cast<char>(raw);
    if (quoted) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          quoted = false;
          was_quoted = true;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
      continue;
    }
    if (ch == '\n') {
      fields.push_back(std::move(field));
      return fields;
    }
    if (ch == '\r') {
      if (in_.peek() == '\n') in_.get();
      fields.push_back(std::move(field));
      return fields;
    }
    if (was_quoted) {
      raise(Errc::ingest_error, "unexpected character after closing quote (row " +
                                    std::to_string(row_number_) + ")");
    }
    if (ch == '"' && field.empty()) {
      quoted = true;
      continue;
    }
    field.push_back(ch);
  }
}

std::string csv_escape(std::string_view field) {
  const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

}  // namespace logicl
