#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bugsna/activity.hpp"
#include "bugsna/centrality.hpp"
#include "bugsna/clustering.hpp"
#include "bugsna/event_log.hpp"
#include "bugsna/expertise.hpp"
#include "bugsna/graph.hpp"
#include "bugsna/identity.hpp"
#include "bugsna/window.hpp"

namespace bugsna {

// Settings for the windowed analysis of an in-memory event log.
struct AnalysisOptions {
  int window_days = 30;
  int slide_days = 1;
  std::optional<Day> range_start;
  std::optional<Day> range_end;
  DistanceMode distance_mode = DistanceMode::Weight;
  PriorScope prior_scope = PriorScope::Window;
  IdentityOptions identity;
  double continuous_threshold = kDefaultContinuousThreshold;
  bool naive_windows = false;  // rescan the log and rebuild each graph from scratch
  unsigned threads = 0;        // 0 = hardware concurrency
};

struct AnalysisResult {
  EventLog log;  // after date filtering
  IdentityTable identity;
  std::vector<WindowSpec> windows;
  std::vector<std::vector<CentralityRecord>> per_window;  // indexed by window
  std::vector<std::size_t> node_counts;                   // per window
  std::set<std::string> orphan_bugs;
  CentralityMatrix matrix;  // zero rows removed
  AssembleStats matrix_stats;
  std::vector<ActivityPattern> patterns;  // matrix row order
  SummarySeries summary;
  std::vector<std::string> warnings;
};

// Identity -> windows -> graphs -> betweenness -> matrix -> patterns and
// summary series. Windows are processed in batches; within a batch
// graphs are built in order and betweenness runs in parallel.
AnalysisResult analyze_log(const EventLog& log, const AnalysisOptions& options);

struct PipelineConfig {
  std::filesystem::path events;
  std::optional<EventFormat> events_format;
  std::optional<std::filesystem::path> commits;
  std::optional<std::filesystem::path> merges;
  std::optional<std::filesystem::path> common_names;
  std::optional<std::filesystem::path> releases;
  std::filesystem::path output_dir = "out";
  AnalysisOptions analysis;
  std::size_t k = kDefaultClusterCount;
  std::uint64_t seed = 1;
  std::size_t max_iter = kDefaultMaxIterations;
  bool log_scale = false;
};

struct ManifestEntry {
  std::string file;  // relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct Manifest {
  std::vector<ManifestEntry> artifacts;
  std::map<std::string, std::string> notes;
};

struct PipelineResult {
  AnalysisResult analysis;
  std::optional<ClusterAssignment> clusters;
  std::vector<std::size_t> heatmap_order;
  std::map<std::string, ExpertiseProfile> profiles;
  Manifest manifest;
};

// Runs everything and writes the artifacts plus manifest.json into
// output_dir. Errors carry a "[stage]" prefix and keep their category
// (InputError, UsageError, ...); files written before the failure are
// removed.
PipelineResult run_pipeline(const PipelineConfig& config);

std::string sha256_hex(std::string_view data);

}  // namespace bugsna
