#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bugsna/time.hpp"

namespace bugsna {

enum class EventKind { Report, Comment };

std::string_view to_string(EventKind kind);

struct BugEvent {
  EventKind kind = EventKind::Comment;
  std::string bug_id;
  std::string author_raw;
  Timestamp timestamp{};
  // Position within the bug: 0 for the report, comments numbered 1..k in
  // (timestamp, input order). Assigned over the whole parsed input, so a
  // date-filtered log keeps the original numbers.
  std::uint32_t ordinal = 0;
  // Comment on a bug whose report never appeared in the input.
  bool orphan = false;
  // 1-based source line, diagnostics only (not part of equality).
  std::size_t line = 0;

  Day day() const { return day_of(timestamp); }

  friend bool operator==(const BugEvent& a, const BugEvent& b) {
    return a.kind == b.kind && a.bug_id == b.bug_id && a.author_raw == b.author_raw &&
           a.timestamp == b.timestamp && a.ordinal == b.ordinal && a.orphan == b.orphan;
  }
};

struct BugIndexEntry {
  std::optional<std::string> reporter_raw;
  std::optional<Timestamp> reported_at;
  // Position of the report in EventLog::events(); empty when the report
  // lies outside the filtered range and only survives here as reporter
  // metadata, or never existed.
  std::optional<std::size_t> report_index;
  std::vector<std::size_t> comments;  // indices into EventLog::events(), ordinal order

  bool orphan() const { return !reporter_raw.has_value(); }

  friend bool operator==(const BugIndexEntry&, const BugIndexEntry&) = default;
};

struct DateRange {
  Day first;
  Day last;

  bool contains(Day d) const { return first <= d && d <= last; }
  long day_count() const { return inclusive_day_count(first, last); }

  friend bool operator==(const DateRange&, const DateRange&) = default;
};

struct Reject {
  std::size_t line = 0;
  std::string reason;
};

// Input record before ordering and ordinal assignment.
struct RawEvent {
  EventKind kind = EventKind::Comment;
  std::string bug_id;
  std::string author_raw;
  Timestamp timestamp{};
  std::size_t line = 0;
};

// Time-ordered, validated event sequence plus a per-bug index. Immutable
// once built; share freely between threads.
class EventLog {
 public:
  EventLog() = default;

  // Sorts by (timestamp, input order), drops exact duplicates with a
  // warning, rejects second reports for a bug and assigns ordinals.
  static EventLog build(std::vector<RawEvent> raw, std::vector<Reject> rejects = {});

  std::span<const BugEvent> events() const { return events_; }
  const std::map<std::string, BugIndexEntry, std::less<>>& bugs() const { return bugs_; }
  const BugIndexEntry* find_bug(std::string_view bug_id) const;
  std::optional<DateRange> date_range() const { return range_; }
  const std::vector<Reject>& rejects() const { return rejects_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::size_t report_count() const;
  std::size_t comment_count() const;
  bool empty() const { return events_.empty(); }

  // Equality covers events, index and range; rejects and warnings are
  // diagnostics.
  friend bool operator==(const EventLog& a, const EventLog& b) {
    return a.events_ == b.events_ && a.bugs_ == b.bugs_ && a.range_ == b.range_;
  }

 private:
  friend EventLog filter_date_range(const EventLog& log, Day first_day, Day last_day);

  std::vector<BugEvent> events_;
  std::map<std::string, BugIndexEntry, std::less<>> bugs_;
  std::optional<DateRange> range_;
  std::vector<Reject> rejects_;
  std::vector<std::string> warnings_;
};

enum class EventFormat { Jsonl, Csv };

// Record-level problems become rejects; a CSV header lacking one of
// kind,bug,author,ts throws InputError.
EventLog parse_events(std::istream& in, EventFormat format);

// Format from the extension (.csv, otherwise JSONL) unless given.
// Unreadable file throws InputError.
EventLog read_events_file(const std::filesystem::path& path,
                          std::optional<EventFormat> format = std::nullopt);

void write_events_jsonl(std::ostream& out, const EventLog& log);
void write_events_csv(std::ostream& out, const EventLog& log);
void write_rejects(std::ostream& out, const std::vector<Reject>& rejects);

// Keeps events whose UTC day lies in [first_day, last_day]. Reports that
// fall outside but whose comments are kept stay in the index as reporter
// metadata. Throws std::invalid_argument when first_day > last_day.
EventLog filter_date_range(const EventLog& log, Day first_day, Day last_day);

}  // namespace bugsna
