#include "bugsna/identity.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "bugsna/csv.hpp"
#include "bugsna/errors.hpp"

namespace bugsna {
namespace {

constexpr std::string_view kTruncationMarker = "....";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string fold(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c); });
  return out;
}

std::size_t codepoint_length(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](unsigned char c) { return (c & 0xC0) != 0x80; }));
}

std::string strip_name(std::string_view name) {
  if (const auto cut = name.find(kTruncationMarker); cut != std::string_view::npos) {
    name = name.substr(0, cut);
  } else if (const auto at = name.find('@'); at != std::string_view::npos) {
    name = name.substr(0, at);
  }
  return std::string(trim(name));
}

}  // namespace

ParticipantId normalize_alias(std::string_view raw, const IdentityOptions& options) {
  const std::string_view text = trim(raw);
  if (text.empty()) throw std::invalid_argument("normalize_alias: blank author string");

  std::string alias;
  if (const auto merged = options.merges.find(text); merged != options.merges.end()) {
    alias = strip_name(merged->second);
  } else {
    alias = strip_name(text);
  }
  if (alias.empty()) {
    throw std::invalid_argument("normalize_alias: no name part in '" + std::string(text) + "'");
  }
  if (options.case_fold) alias = fold(alias);

  ParticipantId id;
  id.ambiguous = codepoint_length(alias) <= options.ambiguity_length_threshold ||
                 options.common_names.contains(options.case_fold ? fold(alias) : alias);
  id.alias = std::move(alias);
  id.raw_sources.insert(std::string(text));
  return id;
}

void IdentityTable::add(std::string_view raw, const IdentityOptions& options) {
  if (raw_to_alias_.contains(raw)) return;
  ParticipantId id;
  try {
    id = normalize_alias(raw, options);
  } catch (const std::invalid_argument&) {
    if (std::find(unresolved_.begin(), unresolved_.end(), raw) == unresolved_.end()) {
      unresolved_.emplace_back(raw);
    }
    return;
  }
  raw_to_alias_.emplace(std::string(raw), id.alias);
  auto [it, inserted] = by_alias_.emplace(id.alias, id);
  if (!inserted) {
    it->second.raw_sources.insert(std::string(trim(raw)));
    it->second.ambiguous = it->second.ambiguous || id.ambiguous;
  }
}

const ParticipantId* IdentityTable::resolve(std::string_view raw) const {
  const auto it = raw_to_alias_.find(raw);
  if (it == raw_to_alias_.end()) return nullptr;
  return &by_alias_.find(it->second)->second;
}

std::vector<const ParticipantId*> IdentityTable::collisions() const {
  std::vector<const ParticipantId*> out;
  for (const auto& [alias, id] : by_alias_) {
    if (id.raw_sources.size() > 1) out.push_back(&id);
  }
  return out;
}

void IdentityTable::write_csv(std::ostream& out) const {
  out << "raw,alias,ambiguous\n";
  for (const auto& [raw, alias] : raw_to_alias_) {
    const auto& id = by_alias_.find(alias)->second;
    write_csv_row(out, {raw, alias, id.ambiguous ? "true" : "false"});
  }
}

IdentityTable build_identity_table(const EventLog& log, const IdentityOptions& options) {
  IdentityTable table;
  for (const auto& event : log.events()) table.add(event.author_raw, options);
  for (const auto& [bug, entry] : log.bugs()) {
    if (entry.reporter_raw) table.add(*entry.reporter_raw, options);
  }
  return table;
}

std::set<std::string, std::less<>> read_common_names(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open common-name list '" + path.string() + "'");
  std::set<std::string, std::less<>> names;
  std::string line;
  while (std::getline(in, line)) {
    const auto name = trim(line);
    if (name.empty() || name.front() == '#') continue;
    names.emplace(name);
  }
  return names;
}

std::map<std::string, std::string, std::less<>> read_alias_merges(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open alias merge file '" + path.string() + "'");
  std::map<std::string, std::string, std::less<>> merges;
  CsvReader reader(in);
  CsvRow row;
  bool first = true;
  while (reader.next(row)) {
    const bool header = first && row.fields.size() == 2 && row.fields[0] == "raw" && row.fields[1] == "alias";
    first = false;
    if (header) continue;
    if (!row.fields.empty() && trim(row.fields[0]).starts_with("#")) continue;
    if (!row.error.empty() || row.fields.size() != 2 || trim(row.fields[0]).empty() ||
        trim(row.fields[1]).empty()) {
      throw InputError("alias merge file '" + path.string() + "' line " + std::to_string(row.line) +
                       ": expected raw,alias");
    }
    merges[std::string(trim(row.fields[0]))] = std::string(trim(row.fields[1]));
  }
  return merges;
}

}  // namespace bugsna
