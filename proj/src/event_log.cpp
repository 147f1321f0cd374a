#include "bugsna/event_log.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "bugsna/csv.hpp"
#include "bugsna/errors.hpp"

namespace bugsna {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<EventKind> parse_kind(std::string_view text) {
  std::string lower;
  for (char c : trim(text)) lower += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  if (lower == "report") return EventKind::Report;
  if (lower == "comment") return EventKind::Comment;
  return std::nullopt;
}

// Shared field validation for both formats. Returns a reject reason or
// empty on success.
std::string make_raw(std::string_view kind, std::string_view bug, std::string_view author,
                     std::string_view ts, std::size_t line, RawEvent& out) {
  const auto parsed_kind = parse_kind(kind);
  if (!parsed_kind) return "missing or unknown kind";
  if (trim(bug).empty()) return "missing bug id";
  if (trim(author).empty()) return "missing author";
  if (trim(ts).empty()) return "missing timestamp";
  try {
    out.timestamp = parse_timestamp(trim(ts));
  } catch (const std::invalid_argument& e) {
    return std::string("bad timestamp: ") + e.what();
  }
  out.kind = *parsed_kind;
  out.bug_id = std::string(trim(bug));
  out.author_raw = std::string(trim(author));
  out.line = line;
  return {};
}

EventLog parse_jsonl(std::istream& in) {
  std::vector<RawEvent> raw;
  std::vector<Reject> rejects;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      rejects.push_back({line, "invalid JSON"});
      continue;
    }
    if (!record.is_object()) {
      rejects.push_back({line, "record is not an object"});
      continue;
    }
    auto field = [&](const char* key) -> std::string {
      const auto it = record.find(key);
      if (it == record.end() || it->is_null()) return {};
      if (it->is_string()) return it->get<std::string>();
      if (it->is_number_integer()) return it->dump();
      return {};
    };
    RawEvent event;
    const std::string reason = make_raw(field("kind"), field("bug"), field("author"), field("ts"), line, event);
    if (!reason.empty()) {
      rejects.push_back({line, reason});
      continue;
    }
    raw.push_back(std::move(event));
  }
  if (in.bad()) throw InputError("read error while parsing events");
  return EventLog::build(std::move(raw), std::move(rejects));
}

EventLog parse_csv(std::istream& in) {
  CsvReader reader(in);
  CsvRow row;
  if (!reader.next(row)) return EventLog::build({}, {});
  std::map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < row.fields.size(); ++i) {
    columns[std::string(trim(row.fields[i]))] = i;
  }
  std::size_t idx[4];
  const char* names[4] = {"kind", "bug", "author", "ts"};
  for (int i = 0; i < 4; ++i) {
    const auto it = columns.find(names[i]);
    if (it == columns.end()) {
      throw InputError(std::string("events CSV header lacks column '") + names[i] + "'");
    }
    idx[i] = it->second;
  }
  const std::size_t width = row.fields.size();

  std::vector<RawEvent> raw;
  std::vector<Reject> rejects;
  while (reader.next(row)) {
    if (!row.error.empty()) {
      rejects.push_back({row.line, row.error});
      continue;
    }
    if (row.fields.size() != width) {
      rejects.push_back({row.line, "expected " + std::to_string(width) + " fields, got " +
                                       std::to_string(row.fields.size())});
      continue;
    }
    RawEvent event;
    const std::string reason = make_raw(row.fields[idx[0]], row.fields[idx[1]], row.fields[idx[2]],
                                        row.fields[idx[3]], row.line, event);
    if (!reason.empty()) {
      rejects.push_back({row.line, reason});
      continue;
    }
    raw.push_back(std::move(event));
  }
  if (in.bad()) throw InputError("read error while parsing events");
  return EventLog::build(std::move(raw), std::move(rejects));
}

}  // namespace

std::string_view to_string(EventKind kind) {
  return kind == EventKind::Report ? "report" : "comment";
}

EventLog EventLog::build(std::vector<RawEvent> raw, std::vector<Reject> rejects) {
  EventLog log;

  // Exact duplicates go first, then second reports on the same bug.
  std::vector<RawEvent> accepted;
  accepted.reserve(raw.size());
  std::map<std::tuple<EventKind, std::string, std::string, Timestamp>, std::size_t> seen;
  std::map<std::string, std::size_t, std::less<>> report_line;
  for (auto& event : raw) {
    auto key = std::make_tuple(event.kind, event.bug_id, event.author_raw, event.timestamp);
    const auto [it, inserted] = seen.emplace(std::move(key), event.line);
    if (!inserted) {
      log.warnings_.push_back("line " + std::to_string(event.line) + ": duplicate of line " +
                              std::to_string(it->second) + ", dropped");
      continue;
    }
    if (event.kind == EventKind::Report) {
      const auto [rit, fresh] = report_line.emplace(event.bug_id, event.line);
      if (!fresh) {
        rejects.push_back({event.line, "second report for bug " + event.bug_id + " (first at line " +
                                           std::to_string(rit->second) + ")"});
        continue;
      }
    }
    accepted.push_back(std::move(event));
  }

  std::stable_sort(accepted.begin(), accepted.end(),
                   [](const RawEvent& a, const RawEvent& b) { return a.timestamp < b.timestamp; });

  std::map<std::string, std::uint32_t, std::less<>> next_ordinal;
  log.events_.reserve(accepted.size());
  for (auto& r : accepted) {
    BugEvent event;
    event.kind = r.kind;
    event.timestamp = r.timestamp;
    event.line = r.line;
    if (r.kind == EventKind::Report) {
      event.ordinal = 0;
    } else {
      event.ordinal = ++next_ordinal[r.bug_id];
      event.orphan = !report_line.contains(r.bug_id);
    }
    event.bug_id = std::move(r.bug_id);
    event.author_raw = std::move(r.author_raw);

    auto& entry = log.bugs_[event.bug_id];
    if (event.kind == EventKind::Report) {
      entry.reporter_raw = event.author_raw;
      entry.reported_at = event.timestamp;
      entry.report_index = log.events_.size();
    } else {
      entry.comments.push_back(log.events_.size());
    }
    log.events_.push_back(std::move(event));
  }

  if (!log.events_.empty()) {
    log.range_ = DateRange{log.events_.front().day(), log.events_.back().day()};
  }
  std::stable_sort(rejects.begin(), rejects.end(),
                   [](const Reject& a, const Reject& b) { return a.line < b.line; });
  log.rejects_ = std::move(rejects);
  return log;
}

const BugIndexEntry* EventLog::find_bug(std::string_view bug_id) const {
  const auto it = bugs_.find(bug_id);
  return it == bugs_.end() ? nullptr : &it->second;
}

std::size_t EventLog::report_count() const {
  return static_cast<std::size_t>(std::count_if(events_.begin(), events_.end(), [](const BugEvent& e) {
    return e.kind == EventKind::Report;
  }));
}

std::size_t EventLog::comment_count() const { return events_.size() - report_count(); }

EventLog parse_events(std::istream& in, EventFormat format) {
  return format == EventFormat::Csv ? parse_csv(in) : parse_jsonl(in);
}

EventLog read_events_file(const std::filesystem::path& path, std::optional<EventFormat> format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open events file '" + path.string() + "'");
  if (!format) {
    format = path.extension() == ".csv" ? EventFormat::Csv : EventFormat::Jsonl;
  }
  return parse_events(in, *format);
}

void write_events_jsonl(std::ostream& out, const EventLog& log) {
  for (const auto& event : log.events()) {
    nlohmann::ordered_json record;
    record["kind"] = to_string(event.kind);
    record["bug"] = event.bug_id;
    record["author"] = event.author_raw;
    record["ts"] = format_timestamp(event.timestamp);
    out << record.dump() << '\n';
  }
}

void write_events_csv(std::ostream& out, const EventLog& log) {
  out << "kind,bug,author,ts\n";
  for (const auto& event : log.events()) {
    write_csv_row(out, {std::string(to_string(event.kind)), event.bug_id, event.author_raw,
                        format_timestamp(event.timestamp)});
  }
}

void write_rejects(std::ostream& out, const std::vector<Reject>& rejects) {
  out << "line,reason\n";
  for (const auto& r : rejects) write_csv_row(out, {std::to_string(r.line), r.reason});
}

EventLog filter_date_range(const EventLog& log, Day first_day, Day last_day) {
  if (first_day > last_day) {
    throw std::invalid_argument("filter_date_range: first day " + format_day(first_day) +
                                " is after last day " + format_day(last_day));
  }
  const DateRange range{first_day, last_day};
  EventLog out;
  out.range_ = range;
  out.rejects_ = log.rejects_;
  out.warnings_ = log.warnings_;
  for (const auto& event : log.events_) {
    if (!range.contains(event.day())) continue;
    auto& entry = out.bugs_[event.bug_id];
    if (event.kind == EventKind::Report) {
      entry.reporter_raw = event.author_raw;
      entry.reported_at = event.timestamp;
      entry.report_index = out.events_.size();
    } else {
      entry.comments.push_back(out.events_.size());
    }
    out.events_.push_back(event);
  }
  for (auto& [bug, entry] : out.bugs_) {
    if (entry.report_index) continue;
    const BugIndexEntry* source = log.find_bug(bug);
    if (source && source->reporter_raw) {
      entry.reporter_raw = source->reporter_raw;
      entry.reported_at = source->reported_at;
    }
  }
  return out;
}

}  // namespace bugsna
