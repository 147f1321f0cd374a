#include "bugsna/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "bugsna/csv.hpp"

namespace bugsna {
namespace {

bool same_length(double a, double b) {
  return std::fabs(a - b) <= kDistanceRelTolerance * std::max(std::fabs(a), std::fabs(b));
}

// Per-source scratch space reused across sources.
struct Workspace {
  explicit Workspace(std::size_t n) : sigma(n), delta(n), preds(n), order() { order.reserve(n); }

  void reset() {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();
    order.clear();
  }

  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<std::vector<std::uint32_t>> preds;
  std::vector<std::uint32_t> order;  // vertices in non-decreasing distance
};

void traverse_unit(const WeightedGraph& g, std::uint32_t source, Workspace& ws, std::vector<long>& dist) {
  std::fill(dist.begin(), dist.end(), -1);
  std::queue<std::uint32_t> frontier;
  dist[source] = 0;
  ws.sigma[source] = 1.0;
  frontier.push(source);
  while (!frontier.empty()) {
    const std::uint32_t v = frontier.front();
    frontier.pop();
    ws.order.push_back(v);
    for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const std::uint32_t w = g.targets[e];
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        frontier.push(w);
      }
      if (dist[w] == dist[v] + 1) {
        ws.sigma[w] += ws.sigma[v];
        ws.preds[w].push_back(v);
      }
    }
  }
}

// Dijkstra over Length (long for exact integer weights, double for
// inverse weights). Equal lengths merge path counts.
template <typename Length, typename EdgeLength, typename Equal>
void traverse_dijkstra(const WeightedGraph& g, std::uint32_t source, Workspace& ws, EdgeLength edge_length,
                       Equal equal) {
  const std::size_t n = g.size();
  std::vector<Length> dist(n, Length{});
  std::vector<char> reached(n, 0);
  std::vector<char> settled(n, 0);
  using Item = std::pair<Length, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[source] = Length{};
  reached[source] = 1;
  ws.sigma[source] = 1.0;
  heap.emplace(Length{}, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (settled[v] || d != dist[v]) continue;
    settled[v] = 1;
    ws.order.push_back(v);
    for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const std::uint32_t w = g.targets[e];
      if (settled[w]) continue;
      const Length alt = dist[v] + edge_length(g.weights[e]);
      if (!reached[w] || (alt < dist[w] && !equal(alt, dist[w]))) {
        reached[w] = 1;
        dist[w] = alt;
        ws.sigma[w] = ws.sigma[v];
        ws.preds[w].assign(1, v);
        heap.emplace(alt, w);
      } else if (equal(alt, dist[w])) {
        ws.sigma[w] += ws.sigma[v];
        ws.preds[w].push_back(v);
      }
    }
  }
}

void accumulate(std::uint32_t source, Workspace& ws, std::vector<double>& centrality) {
  for (auto it = ws.order.rbegin(); it != ws.order.rend(); ++it) {
    const std::uint32_t w = *it;
    for (std::uint32_t v : ws.preds[w]) {
      ws.delta[v] += ws.sigma[v] / ws.sigma[w] * (1.0 + ws.delta[w]);
    }
    if (w != source) centrality[w] += ws.delta[w];
  }
}

}  // namespace

std::string_view to_string(DistanceMode mode) {
  switch (mode) {
    case DistanceMode::Unit:
      return "unit";
    case DistanceMode::Weight:
      return "weight";
    case DistanceMode::InverseWeight:
      return "inverse_weight";
  }
  return "weight";
}

std::optional<DistanceMode> parse_distance_mode(std::string_view text) {
  if (text == "unit") return DistanceMode::Unit;
  if (text == "weight") return DistanceMode::Weight;
  if (text == "inverse_weight") return DistanceMode::InverseWeight;
  return std::nullopt;
}

WeightedGraph WeightedGraph::from_edges(std::size_t node_count, std::span<const WeightedEdge> edges) {
  WeightedGraph g;
  g.names.reserve(node_count);
  for (std::size_t i = 0; i < node_count; ++i) g.names.push_back(std::to_string(i));
  std::vector<std::size_t> degree(node_count, 0);
  for (const auto& e : edges) {
    if (e.u >= node_count || e.v >= node_count) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop");
    if (e.weight <= 0) throw std::invalid_argument("edge weight must be positive");
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets.assign(node_count + 1, 0);
  for (std::size_t i = 0; i < node_count; ++i) g.offsets[i + 1] = g.offsets[i] + degree[i];
  g.targets.resize(g.offsets.back());
  g.weights.resize(g.offsets.back());
  std::vector<std::size_t> fill(g.offsets.begin(), g.offsets.end() - 1);
  for (const auto& e : edges) {
    g.targets[fill[e.u]] = e.v;
    g.weights[fill[e.u]++] = e.weight;
    g.targets[fill[e.v]] = e.u;
    g.weights[fill[e.v]++] = e.weight;
  }
  return g;
}

WeightedGraph to_weighted_graph(const InteractionGraph& graph) {
  std::vector<std::string> names = graph.nodes();
  std::unordered_map<std::string_view, std::uint32_t> index;
  index.reserve(names.size());
  for (std::uint32_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);
  std::vector<WeightedEdge> edges;
  edges.reserve(graph.edges().size());
  for (const auto& [edge, w] : graph.edges()) {
    edges.push_back({index.at(edge.first), index.at(edge.second), w});
  }
  WeightedGraph g = WeightedGraph::from_edges(names.size(), edges);
  g.names = std::move(names);
  return g;
}

std::vector<double> betweenness(const WeightedGraph& graph, DistanceMode mode) {
  const std::size_t n = graph.size();
  std::vector<double> centrality(n, 0.0);
  Workspace ws(n);
  std::vector<long> hop_dist(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    ws.reset();
    switch (mode) {
      case DistanceMode::Unit:
        traverse_unit(graph, s, ws, hop_dist);
        break;
      case DistanceMode::Weight:
        traverse_dijkstra<long>(
            graph, s, ws, [](long w) { return w; }, std::equal_to<long>{});
        break;
      case DistanceMode::InverseWeight:
        traverse_dijkstra<double>(
            graph, s, ws, [](long w) { return 1.0 / static_cast<double>(w); }, same_length);
        break;
    }
    accumulate(s, ws, centrality);
  }
  // Every unordered pair was seen from both ends.
  for (double& c : centrality) c /= 2.0;
  return centrality;
}

std::map<std::string, double> betweenness(const InteractionGraph& graph, DistanceMode mode) {
  const WeightedGraph g = to_weighted_graph(graph);
  const std::vector<double> values = betweenness(g, mode);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < g.size(); ++i) out.emplace(g.names[i], values[i]);
  return out;
}

double normalize(double raw_b, std::size_t node_count) {
  if (node_count < 3) return 0.0;
  const double n = static_cast<double>(node_count);
  const double pairs = (n - 1.0) * (n - 2.0) / 2.0;
  return std::clamp(raw_b / pairs, 0.0, 1.0);
}

std::vector<CentralityRecord> window_centrality(const InteractionGraph& graph, DistanceMode mode) {
  const WeightedGraph g = to_weighted_graph(graph);
  const std::vector<double> raw = betweenness(g, mode);
  std::vector<CentralityRecord> records;
  records.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    records.push_back({g.names[i], graph.window().index, raw[i], normalize(raw[i], g.size())});
  }
  return records;
}

void write_centrality_csv_header(std::ostream& out) { out << "window_index,participant,raw_b,normalized_b\n"; }

void write_centrality_csv_rows(std::ostream& out, std::span<const CentralityRecord> records) {
  for (const auto& r : records) {
    write_csv_row(out, {std::to_string(r.window_index), r.participant, format_double(r.raw_b),
                        format_double(r.normalized_b)});
  }
}

}  // namespace bugsna
