#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bugsna/pipeline.hpp"
#include "bugsna/synth.hpp"

namespace bugsna {

// Flat "key = value" file; '#' starts a comment line. Relative paths in
// values resolve against the file's directory.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in, std::filesystem::path base_dir = {});
  // Unreadable file or malformed line throws UsageError.
  static KeyValueConfig load(const std::filesystem::path& path);

  void set(std::string key, std::string value) { values_[std::move(key)] = std::move(value); }
  bool has(std::string_view key) const { return values_.find(key) != values_.end(); }

  std::optional<std::string> get(std::string_view key) const;
  std::optional<std::filesystem::path> get_path(std::string_view key) const;
  long get_int(std::string_view key, long fallback) const;
  std::uint64_t get_u64(std::string_view key, std::uint64_t fallback) const;
  double get_double(std::string_view key, double fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;

  // Throws UsageError naming keys outside `known`.
  void check_known(const std::set<std::string, std::less<>>& known) const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
  std::filesystem::path base_dir_;
};

// Keys: events, events_format, commits, merges, common_names, releases,
// output_dir, window_days, slide_days, range_start, range_end,
// distance_mode, prior_scope, k, seed, max_iter, continuous_threshold,
// ambiguity_length, case_fold, naive_windows, log_scale, threads.
// Missing `events` throws UsageError.
PipelineConfig pipeline_config_from(const KeyValueConfig& kv);

struct SynthJob {
  SynthConfig synth;
  std::filesystem::path output_dir = "synth";
};

// Keys: seed, n_days, start_day, n_continuous, n_phaser_clusters,
// phaser_cluster_size, n_oneshot, release_days (comma list), base_rate,
// burst_rate, output_dir.
SynthJob synth_job_from(const KeyValueConfig& kv);

}  // namespace bugsna
