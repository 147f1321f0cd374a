#include "bugsna/expertise.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "bugsna/csv.hpp"
#include "bugsna/errors.hpp"

namespace bugsna {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos <= path.size()) {
    const std::size_t next = path.find('/', pos);
    const std::string_view part = path.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    if (!part.empty() && part != ".") parts.push_back(part);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::pair<std::string, std::string> stem_and_extension(std::string_view file) {
  const auto dot = file.rfind('.');
  if (dot == std::string_view::npos || dot == 0) return {lower(file), ""};
  return {lower(file.substr(0, dot)), lower(file.substr(dot + 1))};
}

}  // namespace

CommitLog parse_commits(std::istream& in) {
  CommitLog log;
  CsvReader reader(in);
  CsvRow row;
  if (!reader.next(row)) throw InputError("commits CSV is empty (header author,project,path,ts expected)");
  std::map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < row.fields.size(); ++i) columns[std::string(trim(row.fields[i]))] = i;
  std::size_t idx[4];
  const char* names[4] = {"author", "project", "path", "ts"};
  for (int i = 0; i < 4; ++i) {
    const auto it = columns.find(names[i]);
    if (it == columns.end()) throw InputError(std::string("commits CSV header lacks column '") + names[i] + "'");
    idx[i] = it->second;
  }
  const std::size_t width = row.fields.size();
  while (reader.next(row)) {
    if (!row.error.empty()) {
      log.rejects.push_back({row.line, row.error});
      continue;
    }
    if (row.fields.size() != width) {
      log.rejects.push_back({row.line, "expected " + std::to_string(width) + " fields"});
      continue;
    }
    CommitRecord c;
    c.author_raw = std::string(trim(row.fields[idx[0]]));
    c.project = std::string(trim(row.fields[idx[1]]));
    c.target_path = std::string(trim(row.fields[idx[2]]));
    c.line = row.line;
    if (c.author_raw.empty()) {
      log.rejects.push_back({row.line, "missing author"});
      continue;
    }
    if (c.project.empty()) {
      log.rejects.push_back({row.line, "missing project"});
      continue;
    }
    if (c.target_path.empty()) {
      log.rejects.push_back({row.line, "missing path"});
      continue;
    }
    try {
      c.timestamp = parse_timestamp(trim(row.fields[idx[3]]));
    } catch (const std::invalid_argument& e) {
      log.rejects.push_back({row.line, std::string("bad timestamp: ") + e.what()});
      continue;
    }
    log.commits.push_back(std::move(c));
  }
  return log;
}

CommitLog read_commits_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open commits file '" + path.string() + "'");
  return parse_commits(in);
}

std::string_view to_string(Role role) { return role == Role::Developer ? "developer" : "user"; }

std::string file_category(std::string_view path) {
  const auto parts = split_path(path);
  if (parts.empty()) return "other";
  const auto [stem, ext] = stem_and_extension(parts.back());
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    const std::string dir = lower(parts[i]);
    if (dir == "test" || dir == "tests" || dir == "androidtest" || dir == "testing") return "test";
  }
  if (stem.starts_with("test") || stem.ends_with("test") || stem.ends_with("tests") || stem.ends_with("_unittest")) {
    return "test";
  }
  static const std::set<std::string, std::less<>> source = {
      "c", "cc", "cpp", "cxx", "h", "hh", "hpp", "hxx", "java", "kt", "py", "js", "ts", "go", "rs",
      "s", "asm", "m", "mm", "aidl", "cs", "rb", "pl", "sh", "scala", "swift", "php", "lua"};
  static const std::set<std::string, std::less<>> doc = {"md", "txt", "rst", "html", "htm", "pdf", "doc", "jd", "tex"};
  static const std::set<std::string, std::less<>> build = {"mk", "cmake", "gradle", "bp", "am", "in", "bazel", "gn",
                                                           "gni", "ninja"};
  static const std::set<std::string, std::less<>> build_names = {"makefile", "cmakelists", "build", "android",
                                                                 "configure", "kconfig"};
  if (build.contains(ext) || (ext.empty() && build_names.contains(stem)) ||
      (ext == "txt" && stem == "cmakelists")) {
    return "build";
  }
  if (source.contains(ext)) return "source";
  if (doc.contains(ext) || stem == "readme" || stem == "notice" || stem == "license") return "doc";
  return "other";
}

std::set<std::string> commit_tags(const CommitRecord& commit) {
  std::set<std::string> tags;
  tags.insert(lower(commit.project));
  const auto parts = split_path(commit.target_path);
  if (!parts.empty()) {
    const std::size_t dirs = std::min(parts.size() - 1, kMaxPathSegments);
    for (std::size_t i = 0; i < dirs; ++i) tags.insert(lower(parts[i]));
    const auto stem = stem_and_extension(parts.back()).first;
    if (!stem.empty()) tags.insert(stem);
  }
  tags.insert(file_category(commit.target_path));
  return tags;
}

std::vector<std::pair<std::string, std::size_t>> ExpertiseProfile::ranked_tags() const {
  std::vector<std::pair<std::string, std::size_t>> ranked(tags.begin(), tags.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return ranked;
}

ExpertiseProfile derive_expertise(std::string participant, std::span<const CommitRecord> commits) {
  ExpertiseProfile profile;
  profile.participant = std::move(participant);
  profile.commit_count = commits.size();
  for (const auto& commit : commits) {
    profile.projects.insert(commit.project);
    for (const auto& tag : commit_tags(commit)) ++profile.tags[tag];
  }
  profile.role = profile.commit_count >= 1 ? Role::Developer : Role::PureUser;
  return profile;
}

std::map<std::string, std::vector<CommitRecord>> commits_by_alias(std::span<const CommitRecord> commits,
                                                                  const IdentityOptions& options) {
  std::map<std::string, std::vector<CommitRecord>> grouped;
  for (const auto& commit : commits) {
    try {
      grouped[normalize_alias(commit.author_raw, options).alias].push_back(commit);
    } catch (const std::invalid_argument&) {
      // Author with no usable name part; cannot be joined to anyone.
    }
  }
  return grouped;
}

ClusterExpertise cluster_expertise_summary(std::span<const std::string> members,
                                           const std::map<std::string, ExpertiseProfile>& profiles) {
  ClusterExpertise summary;
  summary.members = members.size();
  std::map<std::string, std::size_t> totals;
  for (const auto& member : members) {
    const auto it = profiles.find(member);
    if (it == profiles.end()) continue;
    if (it->second.role == Role::Developer) ++summary.developers;
    for (const auto& [tag, count] : it->second.tags) totals[tag] += count;
  }
  summary.ranked_tags.assign(totals.begin(), totals.end());
  std::stable_sort(summary.ranked_tags.begin(), summary.ranked_tags.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return summary;
}

DeveloperFraction developer_fraction(std::span<const std::string> sample,
                                     const std::map<std::string, ExpertiseProfile>& profiles) {
  DeveloperFraction f;
  f.sample_size = sample.size();
  for (const auto& member : sample) {
    const auto it = profiles.find(member);
    if (it != profiles.end() && it->second.role == Role::Developer) ++f.developers;
  }
  f.fraction = f.sample_size ? static_cast<double>(f.developers) / static_cast<double>(f.sample_size) : 0.0;
  return f;
}

void write_expertise_csv(std::ostream& out, const std::map<std::string, ExpertiseProfile>& profiles,
                         std::size_t top_n) {
  out << "participant,role,commit_count,top_tags\n";
  for (const auto& [name, profile] : profiles) {
    std::string top;
    const auto ranked = profile.ranked_tags();
    for (std::size_t i = 0; i < std::min(top_n, ranked.size()); ++i) {
      if (i) top += ';';
      top += ranked[i].first + ":" + std::to_string(ranked[i].second);
    }
    write_csv_row(out, {name, std::string(to_string(profile.role)), std::to_string(profile.commit_count), top});
  }
}

}  // namespace bugsna
