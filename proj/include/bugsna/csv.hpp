#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bugsna {

struct CsvRow {
  std::size_t line = 0;  // 1-based line on which the record starts
  std::vector<std::string> fields;
  std::string error;  // non-empty when the record is malformed
};

// RFC-4180 reader: quoted fields may hold separators, doubled quotes and
// line breaks. CRLF and LF line endings are both accepted.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Returns false at end of input. Blank lines are skipped.
  bool next(CsvRow& row);

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);
void write_csv_row(std::ostream& out, std::initializer_list<std::string> fields);

// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace bugsna
