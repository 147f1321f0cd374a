#include "bugsna/time.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace bugsna {
namespace {

int read_fixed(std::string_view text, std::size_t pos, std::size_t width) {
  if (pos + width > text.size()) {
    throw std::invalid_argument("truncated date/time: '" + std::string(text) + "'");
  }
  int value = 0;
  const char* first = text.data() + pos;
  const char* last = first + width;
  for (const char* p = first; p != last; ++p) {
    if (*p < '0' || *p > '9') {
      throw std::invalid_argument("bad digit in date/time: '" + std::string(text) + "'");
    }
  }
  std::from_chars(first, last, value);
  return value;
}

void expect(std::string_view text, std::size_t pos, char c) {
  if (pos >= text.size() || text[pos] != c) {
    throw std::invalid_argument("malformed date/time: '" + std::string(text) + "'");
  }
}

Day read_date(std::string_view text) {
  using namespace std::chrono;
  const int y = read_fixed(text, 0, 4);
  expect(text, 4, '-');
  const int m = read_fixed(text, 5, 2);
  expect(text, 7, '-');
  const int d = read_fixed(text, 8, 2);
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) {
    throw std::invalid_argument("invalid calendar date: '" + std::string(text) + "'");
  }
  return sys_days{ymd};
}

}  // namespace

Day parse_day(std::string_view text) {
  if (text.size() != 10) {
    throw std::invalid_argument("expected YYYY-MM-DD, got '" + std::string(text) + "'");
  }
  return read_date(text);
}

Timestamp parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  const Day date = read_date(text);
  if (text.size() == 10) {
    return Timestamp{date};
  }
  if (text[10] != 'T' && text[10] != 't' && text[10] != ' ') {
    throw std::invalid_argument("malformed date/time: '" + std::string(text) + "'");
  }
  const int hh = read_fixed(text, 11, 2);
  expect(text, 13, ':');
  const int mm = read_fixed(text, 14, 2);
  expect(text, 16, ':');
  const int ss = read_fixed(text, 17, 2);
  if (hh > 23 || mm > 59 || ss > 60) {
    throw std::invalid_argument("time out of range: '" + std::string(text) + "'");
  }
  std::size_t pos = 19;
  if (pos < text.size() && (text[pos] == '.' || text[pos] == ',')) {
    ++pos;
    const std::size_t digits = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == digits) {
      throw std::invalid_argument("empty fraction: '" + std::string(text) + "'");
    }
  }
  long offset_seconds = 0;
  if (pos < text.size()) {
    const char zone = text[pos];
    if (zone == 'Z' || zone == 'z') {
      ++pos;
    } else if (zone == '+' || zone == '-') {
      const int oh = read_fixed(text, pos + 1, 2);
      std::size_t next = pos + 3;
      if (next < text.size() && text[next] == ':') ++next;
      const int om = read_fixed(text, next, 2);
      offset_seconds = (zone == '+' ? 1 : -1) * (oh * 3600L + om * 60L);
      pos = next + 2;
    } else {
      throw std::invalid_argument("bad zone designator: '" + std::string(text) + "'");
    }
  }
  if (pos != text.size()) {
    throw std::invalid_argument("trailing characters in date/time: '" + std::string(text) + "'");
  }
  return Timestamp{date} + hours{hh} + minutes{mm} + seconds{ss} - seconds{offset_seconds};
}

std::string format_day(Day day) {
  const std::chrono::year_month_day ymd{day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string format_timestamp(Timestamp ts) {
  const Day day = day_of(ts);
  const std::chrono::hh_mm_ss hms{ts - day};
  char buf[48];
  std::snprintf(buf, sizeof buf, "T%02ld:%02ld:%02ldZ", static_cast<long>(hms.hours().count()),
                static_cast<long>(hms.minutes().count()), static_cast<long>(hms.seconds().count()));
  return format_day(day) + buf;
}

}  // namespace bugsna
