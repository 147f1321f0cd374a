#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bugsna/activity.hpp"
#include "bugsna/event_log.hpp"

namespace bugsna {

// Planted community: continuous core members active every day, phaser
// clusters bursting around their release days, one-shot participants
// bridging two strangers on a single day.
struct SynthConfig {
  std::uint64_t seed = 42;
  int n_days = 200;
  Day start_day = Day{std::chrono::year{2010} / 1 / 1};
  std::size_t n_continuous = 5;
  std::size_t n_phaser_clusters = 4;
  std::size_t phaser_cluster_size = 8;
  std::size_t n_oneshot = 20;
  // Offsets from start_day; cluster j owns releases j, j + clusters, ...
  std::vector<int> release_days = {20, 40, 60, 80, 110, 130, 150, 170};
  double base_rate = 1.0;   // events per day per continuous member
  double burst_rate = 2.0;  // events per day per phaser member inside a band
};

inline constexpr int kBurstHalfWidthDays = 15;

struct GroundTruth {
  std::map<std::string, ActivityLabel> labels;  // keyed by alias
  std::map<std::string, std::size_t> groups;    // 0 = continuous core, 1..P phaser clusters, then one id per one-shot
};

struct SynthOutput {
  EventLog log;
  GroundTruth truth;
};

// Deterministic for a given config. Throws std::invalid_argument for
// negative or inconsistent settings, fewer release days than phaser
// clusters, or a burst band that does not fit inside n_days.
SynthOutput generate(const SynthConfig& config);

// participant,label,group
void write_ground_truth_csv(std::ostream& out, const GroundTruth& truth);

}  // namespace bugsna
