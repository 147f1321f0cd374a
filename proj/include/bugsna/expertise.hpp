#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bugsna/event_log.hpp"
#include "bugsna/identity.hpp"

namespace bugsna {

struct CommitRecord {
  std::string author_raw;
  std::string project;
  std::string target_path;
  Timestamp timestamp{};
  std::size_t line = 0;
};

struct CommitLog {
  std::vector<CommitRecord> commits;
  std::vector<Reject> rejects;
};

// CSV with header columns author,project,path,ts (any order). A missing
// column throws InputError; bad rows are rejected.
CommitLog parse_commits(std::istream& in);
CommitLog read_commits_file(const std::filesystem::path& path);

enum class Role { Developer, PureUser };
std::string_view to_string(Role role);

inline constexpr std::size_t kMaxPathSegments = 6;

// source, test, doc, build or other.
std::string file_category(std::string_view path);

// Tags one commit contributes: project, up to kMaxPathSegments directory
// segments, the file stem and the file category, all lowercase, each once.
std::set<std::string> commit_tags(const CommitRecord& commit);

struct ExpertiseProfile {
  std::string participant;
  std::size_t commit_count = 0;
  std::map<std::string, std::size_t> tags;  // tag -> multiplicity
  std::set<std::string> projects;
  Role role = Role::PureUser;

  // Descending multiplicity, ties lexicographic.
  std::vector<std::pair<std::string, std::size_t>> ranked_tags() const;
};

ExpertiseProfile derive_expertise(std::string participant, std::span<const CommitRecord> commits);

// Commits keyed by the alias of their author, using the same normalization
// (and merge overrides) as the bug authors.
std::map<std::string, std::vector<CommitRecord>> commits_by_alias(std::span<const CommitRecord> commits,
                                                                  const IdentityOptions& options);

struct ClusterExpertise {
  std::size_t members = 0;
  std::size_t developers = 0;
  std::vector<std::pair<std::string, std::size_t>> ranked_tags;
};

// Members without a profile count as pure users.
ClusterExpertise cluster_expertise_summary(std::span<const std::string> members,
                                           const std::map<std::string, ExpertiseProfile>& profiles);

struct DeveloperFraction {
  std::size_t sample_size = 0;
  std::size_t developers = 0;
  double fraction = 0.0;
};

DeveloperFraction developer_fraction(std::span<const std::string> sample,
                                     const std::map<std::string, ExpertiseProfile>& profiles);

// participant,role,commit_count,top_tags  (top tags "tag:count;...")
void write_expertise_csv(std::ostream& out, const std::map<std::string, ExpertiseProfile>& profiles,
                         std::size_t top_n = 10);

}  // namespace bugsna
