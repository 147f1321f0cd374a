// bugsna: sliding-window betweenness analysis of bug-tracker communities.
//
//   bugsna analyze --config analysis.conf [--naive-windows] [--output DIR]
//   bugsna synth --config synth.conf [--output DIR]
//   bugsna oracle-check [--max-nodes 10] [--trials 500] [--seed 1]
//
// BUGSNA_OUTPUT_DIR overrides the output directory named in a config file.
// Exit status: 0 success, 2 usage, 3 input error, 4 internal error.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "bugsna/centrality.hpp"
#include "bugsna/config.hpp"
#include "bugsna/errors.hpp"
#include "bugsna/pipeline.hpp"
#include "bugsna/synth.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitInternal = 4;

std::optional<std::filesystem::path> output_override(const std::string& flag) {
  if (!flag.empty()) return std::filesystem::path(flag);
  if (const char* env = std::getenv("BUGSNA_OUTPUT_DIR"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

int run_analyze(const std::string& config_path, bool naive, const std::string& output) {
  bugsna::PipelineConfig config = bugsna::pipeline_config_from(bugsna::KeyValueConfig::load(config_path));
  if (naive) config.analysis.naive_windows = true;
  if (const auto dir = output_override(output)) config.output_dir = *dir;
  const auto result = bugsna::run_pipeline(config);
  for (const auto& w : result.analysis.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& entry : result.manifest.artifacts) {
    std::cout << entry.sha256 << "  " << (config.output_dir / entry.file).string() << '\n';
  }
  for (const auto& [key, value] : result.manifest.notes) std::cout << "# " << key << ": " << value << '\n';
  return 0;
}

int run_synth(const std::string& config_path, const std::string& output) {
  bugsna::SynthJob job = bugsna::synth_job_from(bugsna::KeyValueConfig::load(config_path));
  if (const auto dir = output_override(output)) job.output_dir = *dir;
  bugsna::SynthOutput synth;
  try {
    synth = bugsna::generate(job.synth);
  } catch (const std::invalid_argument& e) {
    throw bugsna::UsageError(std::string("[synth] ") + e.what());
  }
  std::filesystem::create_directories(job.output_dir);
  const auto events_path = job.output_dir / "events.jsonl";
  const auto truth_path = job.output_dir / "ground_truth.csv";
  std::ofstream events(events_path, std::ios::binary);
  std::ofstream truth(truth_path, std::ios::binary);
  if (!events || !truth) throw bugsna::InputError("cannot write into '" + job.output_dir.string() + "'");
  bugsna::write_events_jsonl(events, synth.log);
  bugsna::write_ground_truth_csv(truth, synth.truth);
  std::cout << events_path.string() << ": " << synth.log.events().size() << " events\n"
            << truth_path.string() << ": " << synth.truth.labels.size() << " planted participants\n";
  return 0;
}

// Random graphs compared between the traversal and path enumeration.
int run_oracle_check(std::size_t max_nodes, std::size_t trials, std::uint64_t seed) {
  if (max_nodes < 1 || max_nodes > bugsna::kBruteForceMaxNodes) {
    throw bugsna::UsageError("--max-nodes must lie in 1.." + std::to_string(bugsna::kBruteForceMaxNodes));
  }
  std::mt19937_64 rng(seed);
  const auto draw = [&](std::uint64_t n) { return rng() % n; };
  std::size_t failures = 0;
  const bugsna::DistanceMode modes[] = {bugsna::DistanceMode::Unit, bugsna::DistanceMode::Weight,
                                        bugsna::DistanceMode::InverseWeight};
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = 1 + draw(max_nodes);
    const double density = 0.2 + 0.6 * static_cast<double>(draw(1000)) / 1000.0;
    std::vector<bugsna::WeightedEdge> edges;
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = u + 1; v < n; ++v) {
        if (static_cast<double>(draw(1000)) / 1000.0 < density) {
          edges.push_back({u, v, static_cast<long>(1 + draw(5))});
        }
      }
    }
    const auto graph = bugsna::WeightedGraph::from_edges(n, edges);
    for (const auto mode : modes) {
      const auto fast = bugsna::betweenness(graph, mode);
      const auto slow = bugsna::betweenness_bruteforce(graph, mode);
      for (std::size_t v = 0; v < n; ++v) {
        if (std::fabs(fast[v] - slow[v]) > 1e-9) {
          ++failures;
          std::cerr << "trial " << t << " mode " << bugsna::to_string(mode) << " node " << v << ": " << fast[v]
                    << " vs " << slow[v] << '\n';
        }
      }
    }
  }
  std::cout << trials << " graphs x 3 distance modes, " << failures << " mismatches\n";
  return failures == 0 ? 0 : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-window betweenness analysis of bug-tracker communities"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  bool naive = false;
  auto* analyze = app.add_subcommand("analyze", "Run the full analysis pipeline");
  analyze->add_option("--config", config_path, "key=value config file")->required();
  analyze->add_flag("--naive-windows", naive, "Rescan the log and rebuild every window graph");
  analyze->add_option("--output", output, "Output directory (overrides config and environment)");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic event log with ground truth");
  synth->add_option("--config", config_path, "key=value config file")->required();
  synth->add_option("--output", output, "Output directory");

  std::size_t max_nodes = bugsna::kBruteForceMaxNodes;
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  auto* oracle = app.add_subcommand("oracle-check", "Compare fast and brute-force betweenness on random graphs");
  oracle->add_option("--max-nodes", max_nodes, "Largest graph size");
  oracle->add_option("--trials", trials, "Number of random graphs");
  oracle->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*analyze) return run_analyze(config_path, naive, output);
    if (*synth) return run_synth(config_path, output);
    if (*oracle) return run_oracle_check(max_nodes, trials, seed);
  } catch (const bugsna::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const bugsna::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
