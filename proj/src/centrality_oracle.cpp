// Brute-force betweenness: enumerate every simple path, keep the shortest
// per pair, count interior vertices. Exponential; oracle use only.

#include <cmath>
#include <stdexcept>
#include <algorithm>

#include "bugsna/centrality.hpp"

namespace bugsna {
namespace {

struct PairTally {
  bool seen = false;
  long best_exact = 0;
  double best_real = 0.0;
  double paths = 0.0;
  std::vector<double> through;  // per vertex: shortest paths having it inside
};

class Enumerator {
 public:
  Enumerator(const WeightedGraph& g, DistanceMode mode)
      : g_(g), mode_(mode), n_(g.size()), tallies_(n_ * n_), on_path_(n_, 0) {
    for (auto& t : tallies_) t.through.assign(n_, 0.0);
  }

  std::vector<double> run() {
    for (std::uint32_t s = 0; s < n_; ++s) {
      path_.assign(1, s);
      on_path_.assign(n_, 0);
      on_path_[s] = 1;
      extend(s, 0, 0.0);
    }
    std::vector<double> result(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        const PairTally& t = tallies_[i * n_ + j];
        if (!t.seen) continue;
        for (std::size_t k = 0; k < n_; ++k) result[k] += t.through[k] / t.paths;
      }
    }
    return result;
  }

 private:
  double length_of(long w) const {
    return mode_ == DistanceMode::InverseWeight ? 1.0 / static_cast<double>(w) : 0.0;
  }
  long exact_of(long w) const { return mode_ == DistanceMode::Unit ? 1 : w; }

  void extend(std::uint32_t v, long exact, double real) {
    const std::uint32_t s = path_.front();
    if (path_.size() > 1 && s < v) record(s, v, exact, real);
    for (std::size_t e = g_.offsets[v]; e < g_.offsets[v + 1]; ++e) {
      const std::uint32_t w = g_.targets[e];
      if (on_path_[w]) continue;
      on_path_[w] = 1;
      path_.push_back(w);
      extend(w, exact + exact_of(g_.weights[e]), real + length_of(g_.weights[e]));
      path_.pop_back();
      on_path_[w] = 0;
    }
  }

  void record(std::uint32_t s, std::uint32_t t, long exact, double real) {
    PairTally& tally = tallies_[s * n_ + t];
    int cmp;  // -1 shorter, 0 tie, 1 longer than the best so far
    if (!tally.seen) {
      cmp = -1;
    } else if (mode_ == DistanceMode::InverseWeight) {
      const double scale = std::max(std::fabs(real), std::fabs(tally.best_real));
      if (std::fabs(real - tally.best_real) <= kDistanceRelTolerance * scale) {
        cmp = 0;
      } else {
        cmp = real < tally.best_real ? -1 : 1;
      }
    } else {
      cmp = exact < tally.best_exact ? -1 : (exact == tally.best_exact ? 0 : 1);
    }
    if (cmp > 0) return;
    if (cmp < 0) {
      tally.seen = true;
      tally.best_exact = exact;
      tally.best_real = real;
      tally.paths = 0.0;
      std::fill(tally.through.begin(), tally.through.end(), 0.0);
    }
    tally.paths += 1.0;
    for (std::size_t i = 1; i + 1 < path_.size(); ++i) tally.through[path_[i]] += 1.0;
  }

  const WeightedGraph& g_;
  DistanceMode mode_;
  std::size_t n_;
  std::vector<PairTally> tallies_;
  std::vector<std::uint32_t> path_;
  std::vector<char> on_path_;
};

}  // namespace

std::vector<double> betweenness_bruteforce(const WeightedGraph& graph, DistanceMode mode) {
  if (graph.size() > kBruteForceMaxNodes) {
    throw std::invalid_argument("betweenness_bruteforce: " + std::to_string(graph.size()) +
                                " nodes exceeds the limit of " + std::to_string(kBruteForceMaxNodes));
  }
  return Enumerator(graph, mode).run();
}

}  // namespace bugsna
