#include "bugsna/csv.hpp"

#include <charconv>
#include <system_error>

namespace bugsna {

bool CsvReader::next(CsvRow& row) {
  row.fields.clear();
  row.error.clear();
  std::string line;
  while (true) {
    if (!std::getline(in_, line)) return false;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) break;
  }
  row.line = line_;

  std::string field;
  bool in_quotes = false;
  bool was_quoted = false;
  std::size_t i = 0;
  while (true) {
    if (i == line.size()) {
      if (!in_quotes) break;
      // Quoted field continues on the next physical line.
      std::string more;
      if (!std::getline(in_, more)) {
        row.error = "unterminated quoted field";
        row.fields.push_back(std::move(field));
        return true;
      }
      ++line_;
      if (!more.empty() && more.back() == '\r') more.pop_back();
      field += '\n';
      line = std::move(more);
      i = 0;
      continue;
    }
    const char c = line[i++];
    if (in_quotes) {
      if (c == '"') {
        if (i < line.size() && line[i] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
    } else if (c == ',') {
      row.fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '"') {
      if (!field.empty() || was_quoted) {
        row.error = "stray quote inside field";
      }
      in_quotes = true;
      was_quoted = true;
    } else {
      if (was_quoted && row.error.empty()) row.error = "characters after closing quote";
      field += c;
    }
  }
  row.fields.push_back(std::move(field));
  return true;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

void write_csv_row(std::ostream& out, std::initializer_list<std::string> fields) {
  write_csv_row(out, std::span<const std::string>(fields.begin(), fields.size()));
}

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

}  // namespace bugsna
