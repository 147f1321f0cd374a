#include <cmath>

#include <gtest/gtest.h>

#include "bugsna/centrality.hpp"
#include "test_support.hpp"

namespace bugsna {
namespace {

InteractionGraph make_graph(std::initializer_list<std::tuple<const char*, const char*, int>> edges) {
  InteractionGraph g;
  for (const auto& [u, v, w] : edges) {
    g.add_node(u);
    g.add_node(v);
    g.add_edge(u, v, w);
  }
  return g;
}

constexpr DistanceMode kModes[] = {DistanceMode::Unit, DistanceMode::Weight, DistanceMode::InverseWeight};

TEST(Betweenness, Path) {
  const auto g = make_graph({{"A", "B", 1}, {"B", "C", 1}});
  for (auto mode : kModes) {
    const auto b = betweenness(g, mode);
    EXPECT_DOUBLE_EQ(b.at("A"), 0.0);
    EXPECT_DOUBLE_EQ(b.at("B"), 1.0);
    EXPECT_DOUBLE_EQ(b.at("C"), 0.0);
  }
}

TEST(Betweenness, Star) {
  const auto g = make_graph({{"C", "L1", 1}, {"C", "L2", 3}, {"C", "L3", 1}, {"C", "L4", 2}});
  for (auto mode : kModes) {
    const auto b = betweenness(g, mode);
    EXPECT_DOUBLE_EQ(b.at("C"), 6.0);
    EXPECT_DOUBLE_EQ(normalize(b.at("C"), g.node_count()), 1.0);
    EXPECT_DOUBLE_EQ(b.at("L1"), 0.0);
  }
}

TEST(Betweenness, FourCycle) {
  const auto g = make_graph({{"A", "B", 1}, {"B", "C", 1}, {"C", "D", 1}, {"D", "A", 1}});
  for (auto mode : kModes) {
    for (const auto& [name, value] : betweenness(g, mode)) {
      EXPECT_NEAR(value, 0.5, 1e-12) << name;
      EXPECT_NEAR(normalize(value, 4), 0.16667, 1e-5);
      EXPECT_NEAR(normalize(value, 4), 0.5 / 3.0, 1e-12);
    }
  }
}

TEST(Betweenness, DistanceModeChangesGeodesics) {
  // A-C directly with weight 3, or through B with two weight-1 edges.
  const auto g = make_graph({{"A", "B", 1}, {"B", "C", 1}, {"A", "C", 3}});
  EXPECT_DOUBLE_EQ(betweenness(g, DistanceMode::Unit).at("B"), 0.0);
  EXPECT_DOUBLE_EQ(betweenness(g, DistanceMode::Weight).at("B"), 1.0);
  EXPECT_DOUBLE_EQ(betweenness(g, DistanceMode::InverseWeight).at("B"), 0.0);
  // Equal-length alternatives split the credit.
  const auto tie = make_graph({{"A", "B", 1}, {"B", "C", 1}, {"A", "C", 2}});
  EXPECT_DOUBLE_EQ(betweenness(tie, DistanceMode::Weight).at("B"), 0.5);
}

TEST(Betweenness, EmptyAndDisconnected) {
  EXPECT_TRUE(betweenness(InteractionGraph{}, DistanceMode::Weight).empty());
  auto g = make_graph({{"A", "B", 1}, {"B", "C", 1}, {"X", "Y", 1}});
  g.add_node("lonely");
  const auto b = betweenness(g, DistanceMode::Unit);
  EXPECT_EQ(b.size(), 6u);
  EXPECT_DOUBLE_EQ(b.at("B"), 1.0);
  EXPECT_DOUBLE_EQ(b.at("lonely"), 0.0);
}

TEST(Normalize, Examples) {
  EXPECT_DOUBLE_EQ(normalize(6.0, 5), 1.0);
  EXPECT_DOUBLE_EQ(normalize(0.0, 2), 0.0);
  EXPECT_DOUBLE_EQ(normalize(0.0, 100), 0.0);
  EXPECT_NEAR(normalize(0.5, 4), 0.16667, 1e-5);
  EXPECT_DOUBLE_EQ(normalize(0.0, 1), 0.0);
}

TEST(DistanceMode, ParseAndPrint) {
  for (auto mode : kModes) EXPECT_EQ(parse_distance_mode(to_string(mode)), mode);
  EXPECT_FALSE(parse_distance_mode("euclid").has_value());
}

TEST(BruteForce, HandCasesAndGuard) {
  const auto path = to_weighted_graph(make_graph({{"A", "B", 1}, {"B", "C", 1}}));
  EXPECT_EQ(betweenness_bruteforce(path, DistanceMode::Unit), (std::vector<double>{0.0, 1.0, 0.0}));
  const auto cycle = to_weighted_graph(make_graph({{"A", "B", 1}, {"B", "C", 1}, {"C", "D", 1}, {"D", "A", 1}}));
  for (double v : betweenness_bruteforce(cycle, DistanceMode::Unit)) EXPECT_DOUBLE_EQ(v, 0.5);
  const auto big = WeightedGraph::from_edges(kBruteForceMaxNodes + 1, {});
  EXPECT_THROW(betweenness_bruteforce(big, DistanceMode::Unit), std::invalid_argument);
}

TEST(BetweennessProperties, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(20100101);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % kBruteForceMaxNodes;
    const double density = 0.2 + 0.7 * static_cast<double>(rng() % 100) / 100.0;
    const auto g = testing::random_graph(rng, n, density, 5);
    for (auto mode : kModes) {
      const auto fast = betweenness(g, mode);
      const auto slow = betweenness_bruteforce(g, mode);
      ASSERT_EQ(fast.size(), slow.size());
      for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(fast[i], slow[i], 1e-9) << "trial " << trial;
    }
  }
}

TEST(BetweennessProperties, NormalizedWithinUnitInterval) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 30;
    const auto g = testing::random_graph(rng, n, 0.15, 5);
    for (auto mode : kModes) {
      for (double raw : betweenness(g, mode)) {
        const double v = normalize(raw, n);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
  }
}

TEST(BetweennessProperties, ScalingWeightsKeepsWeightModeValues) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 20;
    const auto g = testing::random_graph(rng, n, 0.3, 5);
    std::vector<WeightedEdge> scaled;
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::size_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
        if (u < g.targets[e]) scaled.push_back({u, g.targets[e], g.weights[e] * 7});
      }
    }
    const auto h = WeightedGraph::from_edges(n, scaled);
    for (auto mode : kModes) {
      const auto a = betweenness(g, mode);
      const auto b = betweenness(h, mode);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
    }
  }
}

// On a tree every pair has one path, so sum of raw_b equals the sum over
// pairs of (path length in edges - 1).
TEST(BetweennessProperties, TreeSumEqualsInteriorNodeCount) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    std::vector<WeightedEdge> edges;
    std::vector<std::uint32_t> parent(n, 0);
    for (std::uint32_t v = 1; v < n; ++v) {
      parent[v] = static_cast<std::uint32_t>(rng() % v);
      edges.push_back({parent[v], v, 1 + static_cast<long>(rng() % 5)});
    }
    std::vector<std::size_t> depth(n, 0);
    for (std::uint32_t v = 1; v < n; ++v) depth[v] = depth[parent[v]] + 1;
    auto hops = [&](std::uint32_t a, std::uint32_t b) {
      std::size_t h = 0;
      while (a != b) {
        if (depth[a] < depth[b]) std::swap(a, b);
        a = parent[a];
        ++h;
      }
      return h;
    };
    double expected = 0.0;
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = a + 1; b < n; ++b) expected += static_cast<double>(hops(a, b) - 1);
    }
    const auto g = WeightedGraph::from_edges(n, edges);
    for (auto mode : kModes) {
      double sum = 0.0;
      for (double v : betweenness(g, mode)) sum += v;
      EXPECT_NEAR(sum, expected, 1e-9);
    }
  }
}

TEST(WindowCentrality, RecordsEveryNode) {
  auto g = make_graph({{"A", "B", 1}, {"B", "C", 1}});
  g.set_window({4, parse_day("2010-01-05"), 30, 1});
  const auto records = window_centrality(g, DistanceMode::Weight);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[1].participant, "B");
  EXPECT_EQ(records[1].window_index, 4u);
  EXPECT_DOUBLE_EQ(records[1].normalized_b, 1.0);
}

}  // namespace
}  // namespace bugsna
