#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bugsna/graph.hpp"

namespace bugsna {

// How an edge of weight w turns into a path length.
//   Unit          every edge has length 1 (hop count)
//   Weight        length w, so repeated interaction means a longer path
//   InverseWeight length 1/w
enum class DistanceMode { Unit, Weight, InverseWeight };

std::string_view to_string(DistanceMode mode);
std::optional<DistanceMode> parse_distance_mode(std::string_view text);

// Two inverse-weight path lengths within this relative distance are the
// same length for path counting.
inline constexpr double kDistanceRelTolerance = 1e-12;

struct WeightedEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  long weight = 1;
};

// Compressed adjacency of an undirected graph; each edge stored twice.
struct WeightedGraph {
  std::vector<std::string> names;
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> targets;
  std::vector<long> weights;

  std::size_t size() const { return offsets.size() - 1; }

  // Nodes named "0".."n-1". Throws std::invalid_argument on self-loops,
  // out-of-range endpoints or non-positive weights.
  static WeightedGraph from_edges(std::size_t node_count, std::span<const WeightedEdge> edges);
};

// Node order follows the graph's sorted alias order.
WeightedGraph to_weighted_graph(const InteractionGraph& graph);

// Raw betweenness: for each k the sum over unordered pairs {i, j} not
// containing k of (shortest i-j paths through k) / (shortest i-j paths).
// One shortest-path traversal per source with dependency back-propagation.
std::vector<double> betweenness(const WeightedGraph& graph, DistanceMode mode);
std::map<std::string, double> betweenness(const InteractionGraph& graph, DistanceMode mode);

// raw / ((n-1)(n-2)/2), or 0 when n < 3.
double normalize(double raw_b, std::size_t node_count);

inline constexpr std::size_t kBruteForceMaxNodes = 10;

// Test oracle: enumerates every simple path of every pair. Throws
// std::invalid_argument above kBruteForceMaxNodes nodes.
std::vector<double> betweenness_bruteforce(const WeightedGraph& graph, DistanceMode mode);

struct CentralityRecord {
  std::string participant;
  std::size_t window_index = 0;
  double raw_b = 0.0;
  double normalized_b = 0.0;
};

// One record per node, sorted by participant.
std::vector<CentralityRecord> window_centrality(const InteractionGraph& graph, DistanceMode mode);

// window_index,participant,raw_b,normalized_b
void write_centrality_csv_header(std::ostream& out);
void write_centrality_csv_rows(std::ostream& out, std::span<const CentralityRecord> records);

}  // namespace bugsna
