#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bugsna/event_log.hpp"

namespace bugsna {

struct IdentityOptions {
  std::size_t ambiguity_length_threshold = 2;
  std::set<std::string, std::less<>> common_names;
  bool case_fold = false;
  // raw author string -> alias, applied before the truncation rules.
  std::map<std::string, std::string, std::less<>> merges;
};

struct ParticipantId {
  std::string alias;
  bool ambiguous = false;
  std::set<std::string> raw_sources;

  friend bool operator==(const ParticipantId&, const ParticipantId&) = default;
};

// Reduces a semi-anonymous author string to a bare name:
//   "mathias....@gmail.com" -> "mathias"
//   "someone@example.org"   -> "someone"
//   "romainguy"             -> "romainguy"
// Throws std::invalid_argument for blank input or when nothing remains
// in front of the marker.
ParticipantId normalize_alias(std::string_view raw, const IdentityOptions& options = {});

class IdentityTable {
 public:
  void add(std::string_view raw, const IdentityOptions& options);

  // nullptr when the raw string was never added or could not be resolved.
  const ParticipantId* resolve(std::string_view raw) const;

  const std::map<std::string, ParticipantId, std::less<>>& participants() const { return by_alias_; }
  std::size_t raw_count() const { return raw_to_alias_.size(); }
  std::size_t size() const { return raw_to_alias_.size(); }

  // Aliases reached from more than one raw string.
  std::vector<const ParticipantId*> collisions() const;
  const std::vector<std::string>& unresolved() const { return unresolved_; }

  // CSV: raw,alias,ambiguous
  void write_csv(std::ostream& out) const;

 private:
  std::map<std::string, std::string, std::less<>> raw_to_alias_;
  std::map<std::string, ParticipantId, std::less<>> by_alias_;
  std::vector<std::string> unresolved_;
};

// Covers every author string in the log, including reporters that only
// survive as index metadata.
IdentityTable build_identity_table(const EventLog& log, const IdentityOptions& options = {});

// One alias per line; blank lines and '#' comments ignored.
std::set<std::string, std::less<>> read_common_names(const std::filesystem::path& path);
// CSV lines "raw,alias"; an optional "raw,alias" header is skipped.
std::map<std::string, std::string, std::less<>> read_alias_merges(const std::filesystem::path& path);

}  // namespace bugsna
