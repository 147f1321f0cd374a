#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bugsna/centrality.hpp"
#include "bugsna/window.hpp"

namespace bugsna {

// Participants x windows of normalized betweenness, row-major.
class CentralityMatrix {
 public:
  CentralityMatrix() = default;
  CentralityMatrix(std::vector<std::string> participants, std::vector<WindowSpec> windows,
                   std::vector<double> values);

  std::size_t rows() const { return participants_.size(); }
  std::size_t cols() const { return windows_.size(); }
  bool empty() const { return participants_.empty(); }

  const std::vector<std::string>& participants() const { return participants_; }
  const std::vector<WindowSpec>& windows() const { return windows_; }
  double at(std::size_t row, std::size_t col) const { return values_[row * cols() + col]; }
  std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols(), cols()}; }
  double max_value() const;

  // Same windows, rows in the given order.
  CentralityMatrix reordered(std::span<const std::size_t> order) const;

 private:
  std::vector<std::string> participants_;
  std::vector<WindowSpec> windows_;
  std::vector<double> values_;
};

struct AssembleStats {
  std::size_t participants_seen = 0;
  std::size_t participants_kept = 0;
};

// Dense matrix over the window set, absent cells 0, then every all-zero
// row dropped. Rows sorted by participant. Throws ConsistencyError when a
// record names a window outside the set or a (participant, window) cell
// twice.
CentralityMatrix assemble_matrix(std::span<const CentralityRecord> records, std::span<const WindowSpec> windows,
                                 AssembleStats* stats = nullptr);

struct Run {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive

  std::size_t length() const { return last - first + 1; }
  friend bool operator==(const Run&, const Run&) = default;
};

// Maximal stretches of strictly positive values.
std::vector<Run> detect_runs(std::span<const double> row);

enum class ActivityLabel { OneTime, Phaser, Continuous };

std::string_view to_string(ActivityLabel label);
std::optional<ActivityLabel> parse_activity_label(std::string_view text);

inline constexpr double kDefaultContinuousThreshold = 0.90;

// Continuous when coverage reaches the threshold, otherwise OneTime for a
// single run and Phaser for several. Throws std::invalid_argument when
// there are no runs.
ActivityLabel classify(std::span<const Run> runs, double coverage,
                       double continuous_threshold = kDefaultContinuousThreshold);

struct ActivityPattern {
  std::string participant;
  std::vector<Run> runs;
  double coverage = 0.0;
  ActivityLabel label = ActivityLabel::OneTime;
};

std::vector<ActivityPattern> analyze_patterns(const CentralityMatrix& matrix,
                                              double continuous_threshold = kDefaultContinuousThreshold);

struct SummarySeries {
  std::vector<std::size_t> active_count;
  std::vector<double> betweenness_sum;
};

// Per window: rows with a positive value, and the column sum (row order).
SummarySeries summary_series(const CentralityMatrix& matrix);

// Indices holding the largest positive value within +-radius; the first
// index of a plateau wins.
std::vector<std::size_t> find_peaks(std::span<const double> series, std::size_t radius);

struct ReleaseDate {
  Day day;
  std::string label;
};

// Lines "YYYY-MM-DD[,label]"; blank and '#' lines ignored.
std::vector<ReleaseDate> read_release_dates(const std::filesystem::path& path);

// participant,w0,...,wN
void write_matrix_csv(std::ostream& out, const CentralityMatrix& matrix);
// participant,label,run_count,coverage
void write_patterns_csv(std::ostream& out, std::span<const ActivityPattern> patterns);
// window_index,active_count,betweenness_sum; a trailing release column
// (labels of releases on the window's start day) when releases are given.
void write_summary_csv(std::ostream& out, const SummarySeries& series, std::span<const WindowSpec> windows,
                       std::span<const ReleaseDate> releases = {});

}  // namespace bugsna
