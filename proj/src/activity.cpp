#include "bugsna/activity.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "bugsna/csv.hpp"
#include "bugsna/errors.hpp"

namespace bugsna {

CentralityMatrix::CentralityMatrix(std::vector<std::string> participants, std::vector<WindowSpec> windows,
                                   std::vector<double> values)
    : participants_(std::move(participants)), windows_(std::move(windows)), values_(std::move(values)) {
  if (values_.size() != participants_.size() * windows_.size()) {
    throw std::invalid_argument("matrix values do not match participants x windows");
  }
}

double CentralityMatrix::max_value() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

CentralityMatrix CentralityMatrix::reordered(std::span<const std::size_t> order) const {
  std::vector<std::string> names;
  std::vector<double> values;
  names.reserve(order.size());
  values.reserve(order.size() * cols());
  for (std::size_t r : order) {
    names.push_back(participants_.at(r));
    const auto src = row(r);
    values.insert(values.end(), src.begin(), src.end());
  }
  return CentralityMatrix(std::move(names), windows_, std::move(values));
}

CentralityMatrix assemble_matrix(std::span<const CentralityRecord> records, std::span<const WindowSpec> windows,
                                 AssembleStats* stats) {
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (windows[i].index != i) throw ConsistencyError("window set is not indexed 0..N-1");
  }
  // Sparse first: most participants are zero everywhere.
  std::map<std::string_view, std::vector<std::pair<std::size_t, double>>> cells;
  for (const auto& r : records) {
    if (r.window_index >= windows.size()) {
      throw ConsistencyError("record for " + r.participant + " names window " + std::to_string(r.window_index) +
                             " outside the set of " + std::to_string(windows.size()));
    }
    cells[r.participant].emplace_back(r.window_index, r.normalized_b);
  }

  std::vector<std::string> names;
  std::vector<double> values;
  for (auto& [name, row] : cells) {
    std::sort(row.begin(), row.end());
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i].first == row[i - 1].first) {
        throw ConsistencyError("two records for " + std::string(name) + " in window " +
                               std::to_string(row[i].first));
      }
    }
    const bool nonzero = std::any_of(row.begin(), row.end(), [](const auto& c) { return c.second > 0.0; });
    if (!nonzero) continue;
    names.emplace_back(name);
    const std::size_t base = values.size();
    values.resize(base + windows.size(), 0.0);
    for (const auto& [w, v] : row) values[base + w] = v;
  }
  if (stats) {
    stats->participants_seen = cells.size();
    stats->participants_kept = names.size();
  }
  return CentralityMatrix(std::move(names), std::vector<WindowSpec>(windows.begin(), windows.end()),
                          std::move(values));
}

std::vector<Run> detect_runs(std::span<const double> row) {
  std::vector<Run> runs;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!(row[i] > 0.0)) continue;
    if (!runs.empty() && runs.back().last + 1 == i) {
      runs.back().last = i;
    } else {
      runs.push_back({i, i});
    }
  }
  return runs;
}

std::string_view to_string(ActivityLabel label) {
  switch (label) {
    case ActivityLabel::OneTime:
      return "OneTime";
    case ActivityLabel::Phaser:
      return "Phaser";
    case ActivityLabel::Continuous:
      return "Continuous";
  }
  return "OneTime";
}

std::optional<ActivityLabel> parse_activity_label(std::string_view text) {
  if (text == "OneTime") return ActivityLabel::OneTime;
  if (text == "Phaser") return ActivityLabel::Phaser;
  if (text == "Continuous") return ActivityLabel::Continuous;
  return std::nullopt;
}

ActivityLabel classify(std::span<const Run> runs, double coverage, double continuous_threshold) {
  if (runs.empty()) throw std::invalid_argument("classify: participant has no non-zero run");
  if (coverage >= continuous_threshold) return ActivityLabel::Continuous;
  return runs.size() == 1 ? ActivityLabel::OneTime : ActivityLabel::Phaser;
}

std::vector<ActivityPattern> analyze_patterns(const CentralityMatrix& matrix, double continuous_threshold) {
  std::vector<ActivityPattern> patterns;
  patterns.reserve(matrix.rows());
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    ActivityPattern p;
    p.participant = matrix.participants()[r];
    p.runs = detect_runs(matrix.row(r));
    std::size_t covered = 0;
    for (const auto& run : p.runs) covered += run.length();
    p.coverage = matrix.cols() ? static_cast<double>(covered) / static_cast<double>(matrix.cols()) : 0.0;
    p.label = classify(p.runs, p.coverage, continuous_threshold);
    patterns.push_back(std::move(p));
  }
  return patterns;
}

SummarySeries summary_series(const CentralityMatrix& matrix) {
  SummarySeries s;
  s.active_count.assign(matrix.cols(), 0);
  s.betweenness_sum.assign(matrix.cols(), 0.0);
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    const auto row = matrix.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] > 0.0) ++s.active_count[c];
      s.betweenness_sum[c] += row[c];
    }
  }
  return s;
}

std::vector<std::size_t> find_peaks(std::span<const double> series, std::size_t radius) {
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!(series[i] > 0.0)) continue;
    const std::size_t lo = i > radius ? i - radius : 0;
    const std::size_t hi = std::min(series.size() - 1, i + radius);
    bool is_peak = true;
    for (std::size_t j = lo; j <= hi && is_peak; ++j) {
      if (series[j] > series[i] || (j < i && series[j] == series[i])) is_peak = false;
    }
    if (is_peak) peaks.push_back(i);
  }
  return peaks;
}

std::vector<ReleaseDate> read_release_dates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open release dates '" + path.string() + "'");
  std::vector<ReleaseDate> releases;
  CsvReader reader(in);
  CsvRow row;
  while (reader.next(row)) {
    if (row.fields.empty() || row.fields[0].empty() || row.fields[0].front() == '#') continue;
    try {
      ReleaseDate r{parse_day(row.fields[0]), row.fields.size() > 1 ? row.fields[1] : row.fields[0]};
      releases.push_back(std::move(r));
    } catch (const std::invalid_argument& e) {
      throw InputError("release dates line " + std::to_string(row.line) + ": " + e.what());
    }
  }
  return releases;
}

void write_matrix_csv(std::ostream& out, const CentralityMatrix& matrix) {
  out << "participant";
  for (std::size_t c = 0; c < matrix.cols(); ++c) out << ",w" << c;
  out << '\n';
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    out << csv_escape(matrix.participants()[r]);
    for (double v : matrix.row(r)) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_patterns_csv(std::ostream& out, std::span<const ActivityPattern> patterns) {
  out << "participant,label,run_count,coverage\n";
  for (const auto& p : patterns) {
    write_csv_row(out, {p.participant, std::string(to_string(p.label)), std::to_string(p.runs.size()),
                        format_double(p.coverage)});
  }
}

void write_summary_csv(std::ostream& out, const SummarySeries& series, std::span<const WindowSpec> windows,
                       std::span<const ReleaseDate> releases) {
  const bool annotate = !releases.empty();
  out << "window_index,active_count,betweenness_sum" << (annotate ? ",release" : "") << '\n';
  for (std::size_t w = 0; w < series.active_count.size(); ++w) {
    out << w << ',' << series.active_count[w] << ',' << format_double(series.betweenness_sum[w]);
    if (annotate) {
      std::string labels;
      for (const auto& r : releases) {
        if (w < windows.size() && r.day == windows[w].start_day) {
          if (!labels.empty()) labels += ';';
          labels += r.label;
        }
      }
      out << ',' << csv_escape(labels);
    }
    out << '\n';
  }
}

}  // namespace bugsna
