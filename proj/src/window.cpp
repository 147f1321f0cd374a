#include "bugsna/window.hpp"

#include <algorithm>
#include <stdexcept>

namespace bugsna {

std::vector<WindowSpec> enumerate_windows(const DateRange& range, int window_days, int slide_days,
                                          std::vector<std::string>* warnings) {
  if (window_days < 1) throw std::invalid_argument("window length must be at least one day");
  if (slide_days < 1) throw std::invalid_argument("slide must be at least one day");
  std::vector<WindowSpec> windows;
  const long days = range.day_count();
  if (days < window_days) {
    if (warnings) {
      warnings->push_back("range " + format_day(range.first) + ".." + format_day(range.last) + " spans " +
                          std::to_string(days) + " days, shorter than the " + std::to_string(window_days) +
                          "-day window; no windows");
    }
    return windows;
  }
  const long count = (days - window_days) / slide_days + 1;
  windows.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    windows.push_back(WindowSpec{static_cast<std::size_t>(i), range.first + std::chrono::days{i * slide_days},
                                 window_days, slide_days});
  }
  return windows;
}

std::optional<std::string_view> EventSlice::reporter_of(std::string_view bug_id) const {
  const BugIndexEntry* entry = log_->find_bug(bug_id);
  if (!entry || !entry->reporter_raw) return std::nullopt;
  return std::string_view(*entry->reporter_raw);
}

EventSlice events_in_window(const EventLog& log, const WindowSpec& window) {
  const auto events = log.events();
  std::size_t begin = events.size();
  std::size_t end = events.size();
  bool found = false;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (!window.contains(events[i].day())) continue;
    if (!found) begin = i;
    found = true;
    end = i + 1;
  }
  if (!found) {
    // Empty slice positioned where the window would start.
    begin = end = static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(), [&](const BugEvent& e) { return e.day() < window.start_day; }));
  }
  return EventSlice(log, window, begin, end);
}

EventSlice WindowSlicer::slice(const WindowSpec& window) {
  const auto events = log_->events();
  if (last_start_ && window.start_day < *last_start_) {
    const auto by_day_lt = [](const BugEvent& e, Day d) { return e.day() < d; };
    begin_ = static_cast<std::size_t>(
        std::lower_bound(events.begin(), events.end(), window.start_day, by_day_lt) - events.begin());
    end_ = begin_;
  }
  last_start_ = window.start_day;
  while (begin_ < events.size() && events[begin_].day() < window.start_day) ++begin_;
  end_ = std::max(end_, begin_);
  while (end_ > begin_ && events[end_ - 1].day() > window.last_day()) --end_;
  while (end_ < events.size() && events[end_].day() <= window.last_day()) ++end_;
  return EventSlice(*log_, window, begin_, end_);
}

}  // namespace bugsna
