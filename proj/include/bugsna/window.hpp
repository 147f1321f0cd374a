#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bugsna/event_log.hpp"

namespace bugsna {

struct WindowSpec {
  std::size_t index = 0;
  Day start_day{};
  int length_days = 30;
  int slide_days = 1;

  Day last_day() const { return start_day + std::chrono::days{length_days - 1}; }
  bool contains(Day d) const { return start_day <= d && d <= last_day(); }

  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

// floor((D - W) / s) + 1 windows of W days each, the i-th starting
// i * s days after range.first; none when the range is shorter than W (a
// warning is appended if a sink is given). Throws std::invalid_argument
// for W < 1 or s < 1.
std::vector<WindowSpec> enumerate_windows(const DateRange& range, int window_days, int slide_days,
                                          std::vector<std::string>* warnings = nullptr);

// Events of one window. The log is day-sorted, so the slice is a
// contiguous run [begin, end) of log.events().
class EventSlice {
 public:
  EventSlice(const EventLog& log, const WindowSpec& window, std::size_t begin, std::size_t end)
      : log_(&log), window_(window), begin_(begin), end_(end) {}

  const WindowSpec& window() const { return window_; }
  std::span<const BugEvent> events() const { return log_->events().subspan(begin_, end_ - begin_); }
  std::size_t begin_index() const { return begin_; }
  std::size_t end_index() const { return end_; }
  const EventLog& log() const { return *log_; }

  // Reporter of a touched bug regardless of when the report was filed.
  std::optional<std::string_view> reporter_of(std::string_view bug_id) const;

 private:
  const EventLog* log_;
  WindowSpec window_;
  std::size_t begin_;
  std::size_t end_;
};

// Reference slicing: scans the whole log for every call.
EventSlice events_in_window(const EventLog& log, const WindowSpec& window);

// Two-pointer slicing over windows visited in increasing start order; each
// step costs the events entering plus leaving. Going backwards falls back
// to a binary search.
class WindowSlicer {
 public:
  explicit WindowSlicer(const EventLog& log) : log_(&log) {}

  EventSlice slice(const WindowSpec& window);

 private:
  const EventLog* log_;
  std::optional<Day> last_start_;
  std::size_t begin_ = 0;
  std::size_t end_ = 0;
};

}  // namespace bugsna
