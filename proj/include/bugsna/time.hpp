#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace bugsna {

using Timestamp = std::chrono::sys_seconds;
using Day = std::chrono::sys_days;

// Parses ISO-8601 date-times such as "2010-05-02T10:00:00Z",
// "2010-05-02 10:00:00+02:00" or "2010-05-02T10:00:00.250Z" and normalizes
// to UTC at second precision (fractions are truncated). A missing zone
// designator is read as UTC. Throws std::invalid_argument.
Timestamp parse_timestamp(std::string_view text);

// "YYYY-MM-DD". Throws std::invalid_argument.
Day parse_day(std::string_view text);

std::string format_timestamp(Timestamp ts);
std::string format_day(Day day);

inline Day day_of(Timestamp ts) { return std::chrono::floor<std::chrono::days>(ts); }

// Number of days in [first, last], both inclusive.
inline long inclusive_day_count(Day first, Day last) {
  return (last - first).count() + 1;
}

}  // namespace bugsna
