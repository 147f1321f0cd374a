#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "bugsna/config.hpp"
#include "bugsna/errors.hpp"
#include "bugsna/pipeline.hpp"
#include "bugsna/synth.hpp"

namespace bugsna {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bugsna_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_synth_events(const fs::path& dir, std::uint64_t seed) {
  SynthConfig config;
  config.seed = seed;
  const fs::path path = dir / "events.jsonl";
  std::ofstream out(path);
  write_events_jsonl(out, generate(config).log);
  return path;
}

KeyValueConfig parse_config(const std::string& text, const fs::path& base = {}) {
  std::istringstream in(text);
  return KeyValueConfig::parse(in, base);
}

TEST(Config, MissingEventsIsUsageError) {
  EXPECT_THROW(pipeline_config_from(parse_config("k = 5\n")), UsageError);
}

TEST(Config, UnknownKeyAndBadValuesAreUsageErrors) {
  EXPECT_THROW(pipeline_config_from(parse_config("events = a.jsonl\nwindow = 3\n")), UsageError);
  EXPECT_THROW(pipeline_config_from(parse_config("events = a.jsonl\nk = many\n")), UsageError);
  EXPECT_THROW(pipeline_config_from(parse_config("events = a.jsonl\ndistance_mode = hops\n")), UsageError);
}

TEST(Config, PathsResolveAgainstConfigDirectory) {
  const auto c = pipeline_config_from(parse_config(
      "# comment\nevents = data/events.csv\nk = 7\ndistance_mode = inverse_weight\nprior_scope = global\n"
      "range_start = 2010-01-01\nrange_end = 2011-12-04\n",
      "/base"));
  EXPECT_EQ(c.events, fs::path("/base/data/events.csv"));
  EXPECT_EQ(c.k, 7u);
  EXPECT_EQ(c.analysis.distance_mode, DistanceMode::InverseWeight);
  EXPECT_EQ(c.analysis.prior_scope, PriorScope::Global);
  EXPECT_EQ(c.analysis.range_end, parse_day("2011-12-04"));
}

TEST(Config, SynthJob) {
  const auto job = synth_job_from(parse_config("seed = 9\nrelease_days = 10, 50\nn_phaser_clusters = 2\n"));
  EXPECT_EQ(job.synth.seed, 9u);
  EXPECT_EQ(job.synth.release_days, (std::vector<int>{10, 50}));
}

TEST(AnalyzeLog, NaiveAndIncrementalAgree) {
  SynthConfig synth;
  synth.n_days = 80;
  synth.release_days = {20, 40, 55, 60};
  const auto log = generate(synth).log;
  AnalysisOptions fast;
  AnalysisOptions naive;
  naive.naive_windows = true;
  naive.threads = 1;
  const auto a = analyze_log(log, fast);
  const auto b = analyze_log(log, naive);
  ASSERT_EQ(a.matrix.participants(), b.matrix.participants());
  for (std::size_t r = 0; r < a.matrix.rows(); ++r) {
    for (std::size_t c = 0; c < a.matrix.cols(); ++c) ASSERT_EQ(a.matrix.at(r, c), b.matrix.at(r, c));
  }
}

TEST(RunPipeline, DoubleRunHasIdenticalHashes) {
  const fs::path dir = scratch("double");
  PipelineConfig config;
  config.events = write_synth_events(dir, 42);
  config.k = 6;
  config.output_dir = dir / "run1";
  const auto first = run_pipeline(config);
  config.output_dir = dir / "run2";
  const auto second = run_pipeline(config);
  ASSERT_GE(first.manifest.artifacts.size(), 8u);
  ASSERT_EQ(first.manifest.artifacts.size(), second.manifest.artifacts.size());
  for (std::size_t i = 0; i < first.manifest.artifacts.size(); ++i) {
    EXPECT_EQ(first.manifest.artifacts[i].file, second.manifest.artifacts[i].file);
    EXPECT_EQ(first.manifest.artifacts[i].sha256, second.manifest.artifacts[i].sha256);
  }
  EXPECT_EQ(first.manifest.notes.at("expertise"), "skipped");
  EXPECT_TRUE(fs::exists(dir / "run1" / "manifest.json"));
  EXPECT_TRUE(fs::exists(dir / "run1" / "heatmap.ppm"));
  EXPECT_FALSE(fs::exists(dir / "run1" / "expertise.csv"));
  fs::remove_all(dir);
}

TEST(RunPipeline, CommitsProduceExpertiseOutputs) {
  const fs::path dir = scratch("commits");
  PipelineConfig config;
  config.events = write_synth_events(dir, 3);
  config.commits = dir / "commits.csv";
  std::ofstream(*config.commits) << "author,project,path,ts\n"
                                 << "core0....@gmail.com,kernel,sound/soc/a.c,2010-03-01T00:00:00Z\n";
  config.k = 4;
  config.output_dir = dir / "out";
  const auto result = run_pipeline(config);
  EXPECT_TRUE(fs::exists(dir / "out" / "expertise.csv"));
  EXPECT_TRUE(fs::exists(dir / "out" / "cluster_expertise.csv"));
  EXPECT_EQ(result.profiles.at("core0").role, Role::Developer);
  EXPECT_EQ(result.manifest.notes.count("expertise"), 1u);
  EXPECT_NE(result.manifest.notes.at("expertise"), "skipped");
  fs::remove_all(dir);
}

TEST(RunPipeline, BadInputKeepsCategoryAndLeavesNoOutput) {
  const fs::path dir = scratch("bad");
  PipelineConfig config;
  config.events = dir / "missing.jsonl";
  config.output_dir = dir / "out";
  try {
    run_pipeline(config);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("[ingest]", 0), 0u) << e.what();
  }
  EXPECT_FALSE(fs::exists(dir / "out" / "manifest.json"));
  fs::remove_all(dir);
}

TEST(Sha256, KnownDigest) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // namespace
}  // namespace bugsna
