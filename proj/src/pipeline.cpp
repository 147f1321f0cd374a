#include "bugsna/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>
#include <openssl/evp.h>

#include "bugsna/csv.hpp"
#include "bugsna/errors.hpp"
#include "bugsna/heatmap.hpp"

namespace bugsna {
namespace {

struct Snapshot {
  std::size_t window_index = 0;
  WeightedGraph graph;
};

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Re-throws with a "[stage] " prefix, keeping the error category.
template <typename F>
auto stage(const char* name, F&& body) -> decltype(body()) {
  const std::string prefix = std::string("[") + name + "] ";
  try {
    return body();
  } catch (const InputError& e) {
    throw InputError(prefix + e.what());
  } catch (const UsageError& e) {
    throw UsageError(prefix + e.what());
  } catch (const ConsistencyError& e) {
    throw ConsistencyError(prefix + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(prefix + e.what());
  }
}

class OutputWriter {
 public:
  explicit OutputWriter(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    written_.push_back(path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("write failed for '" + path.string() + "'");
    entries_.push_back({name, sha256_hex(content), content.size()});
  }

  template <typename Fn>
  void emit(const std::string& name, Fn&& fill) {
    std::ostringstream buffer;
    fill(buffer);
    write(name, buffer.str());
  }

  void record_external(const std::filesystem::path& path) { written_.push_back(path); }
  void remove_all() {
    std::error_code ec;
    for (const auto& p : written_) std::filesystem::remove(p, ec);
  }
  std::vector<ManifestEntry> entries() const { return entries_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
  std::vector<ManifestEntry> entries_;
};

std::string top_tags(const std::vector<std::pair<std::string, std::size_t>>& ranked, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < std::min(n, ranked.size()); ++i) {
    if (i) out += ';';
    out += ranked[i].first + ":" + std::to_string(ranked[i].second);
  }
  return out;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

AnalysisResult analyze_log(const EventLog& input, const AnalysisOptions& options) {
  AnalysisResult result;
  const auto full = input.date_range();
  if (options.range_start || options.range_end) {
    const Day first = options.range_start ? *options.range_start : (full ? full->first : *options.range_end);
    const Day last = options.range_end ? *options.range_end : (full ? full->last : *options.range_start);
    result.log = filter_date_range(input, first, last);
  } else {
    result.log = input;
  }
  const EventLog& log = result.log;
  result.identity = build_identity_table(log, options.identity);
  for (const auto& raw : result.identity.unresolved()) {
    result.warnings.push_back("author '" + raw + "' has no usable name part; its events are skipped");
  }

  if (const auto range = log.date_range()) {
    result.windows = enumerate_windows(*range, options.window_days, options.slide_days, &result.warnings);
  }
  const std::size_t window_count = result.windows.size();
  result.per_window.resize(window_count);
  result.node_counts.resize(window_count);

  const unsigned workers = worker_count(options.threads);
  const std::size_t batch = std::max<std::size_t>(16, 4 * workers);
  const GraphOptions graph_options{options.prior_scope};
  WindowSlicer slicer(log);
  IncrementalGraphBuilder incremental(log, result.identity, graph_options);
  BuildReport report;

  for (std::size_t start = 0; start < window_count; start += batch) {
    const std::size_t stop = std::min(window_count, start + batch);
    std::vector<Snapshot> snapshots;
    snapshots.reserve(stop - start);
    for (std::size_t w = start; w < stop; ++w) {
      const WindowSpec& window = result.windows[w];
      if (options.naive_windows) {
        const EventSlice slice = events_in_window(log, window);
        snapshots.push_back({w, to_weighted_graph(build_graph(slice, result.identity, graph_options, &report))});
      } else {
        const EventSlice slice = slicer.slice(window);
        snapshots.push_back({w, to_weighted_graph(incremental.advance(slice, &report))});
      }
    }
    parallel_for(snapshots.size(), workers, [&](std::size_t i) {
      const Snapshot& snap = snapshots[i];
      const std::vector<double> raw = betweenness(snap.graph, options.distance_mode);
      auto& records = result.per_window[snap.window_index];
      records.reserve(raw.size());
      for (std::size_t v = 0; v < raw.size(); ++v) {
        records.push_back({snap.graph.names[v], snap.window_index, raw[v], normalize(raw[v], snap.graph.size())});
      }
      result.node_counts[snap.window_index] = snap.graph.size();
    });
  }
  result.orphan_bugs = std::move(report.orphan_bugs);

  std::vector<CentralityRecord> all;
  for (const auto& records : result.per_window) all.insert(all.end(), records.begin(), records.end());
  result.matrix = assemble_matrix(all, result.windows, &result.matrix_stats);
  result.patterns = analyze_patterns(result.matrix, options.continuous_threshold);
  result.summary = summary_series(result.matrix);
  return result;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  PipelineResult out;
  auto& notes = out.manifest.notes;

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw InputError("cannot create output directory '" + config.output_dir.string() + "': " + ec.message());
  OutputWriter writer(config.output_dir);

  try {
    AnalysisOptions options = config.analysis;
    const EventLog log = stage("ingest", [&] {
      if (config.common_names) options.identity.common_names = read_common_names(*config.common_names);
      if (config.merges) options.identity.merges = read_alias_merges(*config.merges);
      EventLog parsed = read_events_file(config.events, config.events_format);
      if (!parsed.rejects().empty()) {
        std::filesystem::path rejects_path = config.events;
        rejects_path += ".rejects";
        std::ofstream rejects(rejects_path);
        if (rejects) {
          writer.record_external(rejects_path);
          write_rejects(rejects, parsed.rejects());
        }
      }
      return parsed;
    });
    notes["events_parsed"] = std::to_string(log.events().size());
    notes["rejects"] = std::to_string(log.rejects().size());
    notes["duplicates_dropped"] = std::to_string(log.warnings().size());

    out.analysis = stage("analysis", [&] { return analyze_log(log, options); });
    const AnalysisResult& a = out.analysis;
    notes["events_analyzed"] = std::to_string(a.log.events().size());
    notes["bugs_reported"] = std::to_string(a.log.report_count());
    notes["comments"] = std::to_string(a.log.comment_count());
    notes["participants"] = std::to_string(a.identity.participants().size());
    notes["alias_collisions"] = std::to_string(a.identity.collisions().size());
    notes["windows"] = std::to_string(a.windows.size());
    notes["nonzero_participants"] = std::to_string(a.matrix.rows());
    notes["orphan_bugs"] = std::to_string(a.orphan_bugs.size());
    notes["distance_mode"] = std::string(to_string(options.distance_mode));
    notes["prior_scope"] = options.prior_scope == PriorScope::Window ? "window" : "global";
    if (const auto range = a.log.date_range()) {
      notes["range"] = format_day(range->first) + ".." + format_day(range->last);
    }
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& p : a.patterns) ++counts[static_cast<int>(p.label)];
    notes["patterns"] = "OneTime=" + std::to_string(counts[0]) + " Phaser=" + std::to_string(counts[1]) +
                        " Continuous=" + std::to_string(counts[2]);

    std::vector<ReleaseDate> releases;
    if (config.releases) releases = stage("ingest", [&] { return read_release_dates(*config.releases); });

    stage("report", [&] {
      writer.emit("identity.csv", [&](std::ostream& s) { a.identity.write_csv(s); });
      writer.emit("centrality.csv", [&](std::ostream& s) {
        write_centrality_csv_header(s);
        for (const auto& records : a.per_window) write_centrality_csv_rows(s, records);
      });
      writer.emit("matrix.csv", [&](std::ostream& s) { write_matrix_csv(s, a.matrix); });
      writer.emit("patterns.csv", [&](std::ostream& s) { write_patterns_csv(s, a.patterns); });
      writer.emit("summary.csv", [&](std::ostream& s) { write_summary_csv(s, a.summary, a.windows, releases); });
    });

    if (a.matrix.rows() > 0 && a.matrix.cols() > 0) {
      stage("clustering", [&] {
        const std::size_t k = std::min(config.k, a.matrix.rows());
        if (k != config.k) notes["k_clamped"] = std::to_string(config.k) + "->" + std::to_string(k);
        out.clusters = kmeans(a.matrix, k, config.seed, config.max_iter);
        out.heatmap_order = order_rows_for_heatmap(*out.clusters, a.matrix);
        notes["k"] = std::to_string(k);
        notes["kmeans_iterations"] = std::to_string(out.clusters->iterations_run);
        notes["kmeans_converged"] = out.clusters->converged ? "true" : "false";
      });
      stage("report", [&] {
        writer.emit("clusters.csv",
                    [&](std::ostream& s) { write_clusters_csv(s, *out.clusters, a.matrix, out.heatmap_order); });
        writer.emit("centroids.csv", [&](std::ostream& s) { write_centroids_csv(s, *out.clusters); });
        writer.emit("heatmap.ppm", [&](std::ostream& s) {
          write_ppm(s, render_heatmap(a.matrix, out.heatmap_order, config.log_scale));
        });
        writer.emit("heatmap.csv",
                    [&](std::ostream& s) { write_heatmap_csv(s, a.matrix, *out.clusters, out.heatmap_order); });
      });
    } else {
      notes["clustering"] = "skipped: no participant with non-zero betweenness";
    }

    if (config.commits) {
      stage("expertise", [&] {
        const CommitLog commits = read_commits_file(*config.commits);
        notes["commits"] = std::to_string(commits.commits.size());
        notes["commit_rejects"] = std::to_string(commits.rejects.size());
        const auto grouped = commits_by_alias(commits.commits, options.identity);
        for (const auto& name : a.matrix.participants()) {
          const auto it = grouped.find(name);
          out.profiles.emplace(name, it == grouped.end() ? derive_expertise(name, {})
                                                         : derive_expertise(name, it->second));
        }
        writer.emit("expertise.csv", [&](std::ostream& s) { write_expertise_csv(s, out.profiles); });
        if (out.clusters) {
          writer.emit("cluster_expertise.csv", [&](std::ostream& s) {
            s << "cluster_id,members,developers,top_tags\n";
            std::vector<std::vector<std::string>> members(out.clusters->k);
            for (std::size_t r : out.heatmap_order) {
              members[out.clusters->labels[r]].push_back(a.matrix.participants()[r]);
            }
            for (std::size_t c = 0; c < members.size(); ++c) {
              const auto summary = cluster_expertise_summary(members[c], out.profiles);
              write_csv_row(s, {std::to_string(c), std::to_string(summary.members),
                                std::to_string(summary.developers), top_tags(summary.ranked_tags, 10)});
            }
          });
        }
        writer.emit("role_summary.csv", [&](std::ostream& s) {
          s << "label,participants,developers,fraction\n";
          for (ActivityLabel label : {ActivityLabel::OneTime, ActivityLabel::Phaser, ActivityLabel::Continuous}) {
            std::vector<std::string> sample;
            for (const auto& p : a.patterns) {
              if (p.label == label) sample.push_back(p.participant);
            }
            const auto f = developer_fraction(sample, out.profiles);
            write_csv_row(s, {std::string(to_string(label)), std::to_string(f.sample_size),
                              std::to_string(f.developers), format_double(f.fraction)});
          }
        });
        notes["expertise"] = "derived";
      });
    } else {
      notes["expertise"] = "skipped";
    }

    out.manifest.artifacts = writer.entries();
    nlohmann::ordered_json manifest;
    manifest["artifacts"] = nlohmann::ordered_json::array();
    for (const auto& entry : out.manifest.artifacts) {
      manifest["artifacts"].push_back({{"file", entry.file}, {"sha256", entry.sha256}, {"bytes", entry.bytes}});
    }
    manifest["notes"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : notes) manifest["notes"][key] = value;
    stage("report", [&] { writer.write("manifest.json", manifest.dump(2) + "\n"); });
  } catch (...) {
    writer.remove_all();
    throw;
  }
  return out;
}

}  // namespace bugsna
