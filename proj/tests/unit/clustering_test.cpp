#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "bugsna/clustering.hpp"

namespace bugsna {
namespace {

using Rows = std::vector<std::vector<double>>;

std::vector<std::span<const double>> spans(const Rows& rows) {
  return {rows.begin(), rows.end()};
}

CentralityMatrix matrix(const Rows& rows, std::vector<std::string> names = {}) {
  std::vector<WindowSpec> windows;
  for (std::size_t i = 0; i < rows[0].size(); ++i) {
    windows.push_back({i, parse_day("2010-01-01") + std::chrono::days{static_cast<long>(i)}, 30, 1});
  }
  if (names.empty()) {
    for (std::size_t r = 0; r < rows.size(); ++r) names.push_back("p" + std::to_string(r));
  }
  std::vector<double> values;
  for (const auto& row : rows) values.insert(values.end(), row.begin(), row.end());
  return CentralityMatrix(names, windows, values);
}

// Sum of cosine distances to the unit mean direction of each group, the
// spherical K-means optimum for a fixed partition.
double partition_objective(const Rows& rows, const std::vector<std::size_t>& labels, std::size_t k) {
  double total = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> mean(rows[0].size(), 0.0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (labels[r] != c) continue;
      double norm = 0.0;
      for (double v : rows[r]) norm += v * v;
      norm = std::sqrt(norm);
      for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += rows[r][i] / norm;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (labels[r] == c) total += cosine_distance(rows[r], mean);
    }
  }
  return total;
}

TEST(CosineDistance, UnitCases) {
  EXPECT_NEAR(cosine_distance(std::vector<double>{1, 1}, std::vector<double>{2, 2}), 0.0, 1e-12);
  EXPECT_NEAR(cosine_distance(std::vector<double>{1, 0}, std::vector<double>{0, 1}), 1.0, 1e-12);
  EXPECT_NEAR(cosine_distance(std::vector<double>{1, 0}, std::vector<double>{1, 1}), 1.0 - 1.0 / std::sqrt(2.0),
              1e-12);
  EXPECT_NEAR(cosine_distance(std::vector<double>{1, 0}, std::vector<double>{-1, 0}), 2.0, 1e-12);
}

TEST(CosineDistance, ErrorsAndSymmetry) {
  EXPECT_THROW(cosine_distance(std::vector<double>{0, 0}, std::vector<double>{1, 0}), std::invalid_argument);
  EXPECT_THROW(cosine_distance(std::vector<double>{1}, std::vector<double>{1, 0}), std::invalid_argument);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> a(5), b(5);
    for (auto& v : a) v = u(rng);
    for (auto& v : b) v = u(rng);
    const double d = cosine_distance(a, b);
    EXPECT_DOUBLE_EQ(d, cosine_distance(b, a));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 2.0);
  }
}

TEST(KMeans, TwoDirectionsFourRows) {
  const Rows rows{{1, 0}, {0.9, 0.1}, {0, 1}, {0.05, 0.95}};
  const auto result = kmeans(spans(rows), 2, 7);
  EXPECT_EQ(result.labels[0], result.labels[1]);
  EXPECT_EQ(result.labels[2], result.labels[3]);
  EXPECT_NE(result.labels[0], result.labels[2]);
  // Exhaustive check over every two-way split.
  double best = INFINITY;
  std::vector<std::size_t> best_labels;
  for (unsigned mask = 1; mask < 15; ++mask) {
    std::vector<std::size_t> labels(4);
    for (unsigned r = 0; r < 4; ++r) labels[r] = (mask >> r) & 1u;
    const double value = partition_objective(rows, labels, 2);
    if (value < best) {
      best = value;
      best_labels = labels;
    }
  }
  EXPECT_EQ(pair_counting_agreement(result.labels, best_labels), 1.0);
  EXPECT_NEAR(result.objective_history.back(), best, 1e-12);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(pair_counting_agreement(kmeans(spans(rows), 2, seed).labels, best_labels), 1.0);
  }
}

TEST(KMeans, KEqualsRowsAndKOne) {
  const Rows rows{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0.2, 0.3, 0.9}};
  const auto each = kmeans(spans(rows), rows.size(), 3);
  EXPECT_EQ(std::set<std::size_t>(each.labels.begin(), each.labels.end()).size(), rows.size());
  EXPECT_NEAR(clustering_objective(spans(rows), each), 0.0, 1e-12);
  const auto one = kmeans(spans(rows), 1, 3);
  for (auto l : one.labels) EXPECT_EQ(l, 0u);
}

TEST(KMeans, ArgumentErrors) {
  const Rows rows{{1, 0}, {0, 1}};
  EXPECT_THROW(kmeans(spans(rows), 0, 1), std::invalid_argument);
  EXPECT_THROW(kmeans(spans(rows), 3, 1), std::invalid_argument);
  const Rows zero{{1, 0}, {0, 0}};
  EXPECT_THROW(kmeans(spans(zero), 1, 1), std::invalid_argument);
}

Rows random_sparse_rows(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  Rows rows(n, std::vector<double>(dim, 0.0));
  for (auto& row : rows) {
    const std::size_t start = rng() % dim;
    const std::size_t len = 1 + rng() % 20;
    for (std::size_t i = start; i < std::min(dim, start + len); ++i) row[i] = static_cast<double>(rng() % 100) / 100.0;
    row[start] = 0.5;
  }
  return rows;
}

TEST(KMeansProperties, ObjectiveNeverIncreasesAndNoEmptyClusters) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const auto rows = random_sparse_rows(rng, 20 + rng() % 60, 50);
    const std::size_t k = 1 + rng() % 15;
    const auto result = kmeans(spans(rows), k, rng());
    for (std::size_t i = 1; i < result.objective_history.size(); ++i) {
      EXPECT_LE(result.objective_history[i],
                result.objective_history[i - 1] + 1e-9 * std::max(1.0, result.objective_history[i - 1]));
    }
    for (auto size : result.cluster_sizes()) EXPECT_GT(size, 0u);
    EXPECT_EQ(result.labels.size(), rows.size());
    for (const auto& c : result.centroids) {
      double norm = 0.0;
      for (double v : c) norm += v * v;
      EXPECT_NEAR(norm, 1.0, 1e-9);
    }
  }
}

TEST(KMeansProperties, FixedSeedIsBitReproducible) {
  std::mt19937_64 rng(23);
  const auto rows = random_sparse_rows(rng, 80, 60);
  const auto a = kmeans(spans(rows), 9, 12345);
  const auto b = kmeans(spans(rows), 9, 12345);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.centroids, b.centroids);
  EXPECT_EQ(a.objective_history, b.objective_history);
}

TEST(PairCounting, Agreement) {
  const std::vector<std::size_t> a{0, 0, 1, 1};
  const std::vector<std::size_t> relabelled{5, 5, 2, 2};
  EXPECT_DOUBLE_EQ(pair_counting_agreement(a, relabelled), 1.0);
  const std::vector<std::size_t> merged{0, 0, 0, 0};
  EXPECT_DOUBLE_EQ(pair_counting_agreement(a, merged), 2.0 / 6.0);
  EXPECT_THROW(pair_counting_agreement(a, std::vector<std::size_t>{0}), std::invalid_argument);
}

TEST(HeatmapOrder, ClustersByPeakWindow) {
  // Cluster peaking late given the lower id on purpose.
  const Rows rows{{0, 0, 0, 1}, {0, 0, 0.5, 1}, {1, 0, 0, 0}, {1, 1, 0, 0}};
  const auto m = matrix(rows, {"d", "c", "b", "a"});
  ClusterAssignment assignment;
  assignment.k = 2;
  assignment.labels = {0, 0, 1, 1};
  assignment.centroids = {{0, 0, 0.45, 0.89}, {0.89, 0.45, 0, 0}};
  const auto order = order_rows_for_heatmap(assignment, m);
  // Cluster 1 peaks at window 0 so it comes first; inside each cluster
  // higher coverage wins.
  EXPECT_EQ(order, (std::vector<std::size_t>{3, 2, 1, 0}));
}

TEST(HeatmapOrder, TiesByClusterIdThenName) {
  const Rows rows{{1, 0}, {1, 0}, {1, 0}};
  const auto m = matrix(rows, {"z", "y", "x"});
  ClusterAssignment assignment;
  assignment.k = 2;
  assignment.labels = {1, 0, 1};
  assignment.centroids = {{1, 0}, {1, 0}};
  EXPECT_EQ(order_rows_for_heatmap(assignment, m), (std::vector<std::size_t>{1, 2, 0}));
}

TEST(ClustersCsv, FollowsHeatmapOrder) {
  const Rows rows{{0, 1}, {1, 0}};
  const auto m = matrix(rows, {"late", "early"});
  const auto assignment = kmeans(m, 2, 1);
  const auto order = order_rows_for_heatmap(assignment, m);
  std::ostringstream out;
  write_clusters_csv(out, assignment, m, order);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("participant,cluster_id\n", 0), 0u);
  EXPECT_LT(text.find("early"), text.find("late"));
}

}  // namespace
}  // namespace bugsna
