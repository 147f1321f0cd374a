#include "bugsna/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "bugsna/csv.hpp"

namespace bugsna {
namespace {

// Portable [0, 1) draw; std::uniform_real_distribution differs between
// standard libraries.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

// Both arguments unit length.
double unit_distance(std::span<const double> a, std::span<const double> b) {
  return std::clamp(1.0 - dot(a, b), 0.0, 2.0);
}

std::vector<double> unit(std::span<const double> v) {
  const double norm = std::sqrt(dot(v, v));
  if (!(norm > 0.0)) throw std::invalid_argument("kmeans: zero-norm row");
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x /= norm;
  return out;
}

std::vector<std::vector<double>> seed_centroids(const std::vector<std::vector<double>>& points, std::size_t k,
                                                std::mt19937_64& rng) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> centroids;
  std::vector<char> chosen(n, 0);
  auto take = [&](std::size_t i) {
    chosen[i] = 1;
    centroids.push_back(points[i]);
  };
  take(static_cast<std::size_t>(unit_draw(rng) * static_cast<double>(n)));

  std::vector<double> closest(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = unit_distance(points[i], centroids[0]);
    closest[i] = d * d;
  }
  const std::size_t trials = 2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
  while (centroids.size() < k) {
    const double potential = std::accumulate(closest.begin(), closest.end(), 0.0);
    if (!(potential > 0.0)) {
      // Every remaining row duplicates a centroid direction.
      const auto next = static_cast<std::size_t>(std::find(chosen.begin(), chosen.end(), 0) - chosen.begin());
      take(next);
      continue;
    }
    std::size_t best = n;
    double best_potential = std::numeric_limits<double>::infinity();
    std::vector<double> best_closest;
    for (std::size_t t = 0; t < trials; ++t) {
      double target = unit_draw(rng) * potential;
      std::size_t candidate = n;
      std::size_t last_positive = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (closest[i] > 0.0) last_positive = i;
        target -= closest[i];
        if (target < 0.0 && closest[i] > 0.0) {
          candidate = i;
          break;
        }
      }
      if (candidate == n) candidate = last_positive;  // rounding left target >= 0
      std::vector<double> trial(n);
      double trial_potential = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = unit_distance(points[i], points[candidate]);
        trial[i] = std::min(closest[i], d * d);
        trial_potential += trial[i];
      }
      if (trial_potential < best_potential) {
        best = candidate;
        best_potential = trial_potential;
        best_closest = std::move(trial);
      }
    }
    take(best);
    closest = std::move(best_closest);
  }
  return centroids;
}

void check_not_increasing(double before, double after, const char* phase) {
  const double slack = 1e-9 * std::max(1.0, std::fabs(before));
  if (after > before + slack) {
    throw std::logic_error(std::string("kmeans: objective increased during ") + phase);
  }
}

}  // namespace

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("cosine_distance: length mismatch");
  const double na = std::sqrt(dot(a, a));
  const double nb = std::sqrt(dot(b, b));
  if (!(na > 0.0) || !(nb > 0.0)) throw std::invalid_argument("cosine_distance: zero-norm vector");
  return std::clamp(1.0 - dot(a, b) / (na * nb), 0.0, 2.0);
}

std::vector<std::size_t> ClusterAssignment::cluster_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t label : labels) ++sizes[label];
  return sizes;
}

ClusterAssignment kmeans(std::span<const std::span<const double>> rows, std::size_t k, std::uint64_t seed,
                         std::size_t max_iter) {
  if (k == 0) throw std::invalid_argument("kmeans: k must be positive");
  if (rows.empty()) throw std::invalid_argument("kmeans: no rows");
  if (k > rows.size()) {
    throw std::invalid_argument("kmeans: k = " + std::to_string(k) + " exceeds " + std::to_string(rows.size()) +
                                " rows");
  }
  const std::size_t n = rows.size();
  const std::size_t dim = rows[0].size();
  std::vector<std::vector<double>> points;
  points.reserve(n);
  for (const auto& r : rows) {
    if (r.size() != dim) throw std::invalid_argument("kmeans: ragged rows");
    points.push_back(unit(r));
  }

  std::mt19937_64 rng(seed);
  ClusterAssignment result;
  result.k = k;
  result.seed = seed;
  result.centroids = seed_centroids(points, k, rng);
  result.labels.assign(n, k);

  std::vector<double> distance(n);
  auto objective_now = [&] {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += unit_distance(points[i], result.centroids[result.labels[i]]);
    return total;
  };

  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    // Assignment step, ties to the lowest cluster id.
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = unit_distance(points[i], result.centroids[0]);
      for (std::size_t c = 1; c < k; ++c) {
        const double d = unit_distance(points[i], result.centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      labels[i] = best;
      distance[i] = best_d;
    }

    // Empty-cluster repair.
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t label : labels) ++sizes[label];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[labels[i]] < 2) continue;
        if (far == n || distance[i] > distance[far]) far = i;
      }
      --sizes[labels[far]];
      labels[far] = c;
      ++sizes[c];
      distance[far] = 0.0;
      result.centroids[c] = points[far];
    }

    const bool changed = labels != result.labels;
    result.labels = std::move(labels);
    const double assigned = objective_now();
    check_not_increasing(previous, assigned, "assignment");

    // Update step: renormalized mean of unit rows, fixed summation order.
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      auto& sum = sums[result.labels[i]];
      for (std::size_t d = 0; d < dim; ++d) sum[d] += points[i][d];
    }
    for (std::size_t c = 0; c < k; ++c) {
      const double norm = std::sqrt(dot(sums[c], sums[c]));
      if (!(norm > 0.0)) continue;  // opposing members cancel; keep the old centroid
      for (double& x : sums[c]) x /= norm;
      result.centroids[c] = std::move(sums[c]);
    }
    const double updated = objective_now();
    check_not_increasing(assigned, updated, "update");
    result.objective_history.push_back(updated);
    previous = updated;
    result.iterations_run = iter + 1;
    if (!changed) {
      result.converged = true;
      break;
    }
  }
  return result;
}

ClusterAssignment kmeans(const CentralityMatrix& matrix, std::size_t k, std::uint64_t seed, std::size_t max_iter) {
  std::vector<std::span<const double>> rows;
  rows.reserve(matrix.rows());
  for (std::size_t r = 0; r < matrix.rows(); ++r) rows.push_back(matrix.row(r));
  return kmeans(rows, k, seed, max_iter);
}

double clustering_objective(std::span<const std::span<const double>> rows, const ClusterAssignment& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    total += cosine_distance(rows[i], assignment.centroids.at(assignment.labels.at(i)));
  }
  return total;
}

double pair_counting_agreement(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("pair_counting_agreement: size mismatch");
  const std::size_t n = a.size();
  if (n < 2) return 1.0;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if ((a[i] == a[j]) == (b[i] == b[j])) ++agree;
    }
  }
  return static_cast<double>(agree) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

std::vector<std::size_t> order_rows_for_heatmap(const ClusterAssignment& assignment,
                                                const CentralityMatrix& matrix) {
  if (assignment.labels.size() != matrix.rows()) {
    throw std::invalid_argument("order_rows_for_heatmap: assignment does not match matrix");
  }
  std::vector<std::size_t> peak(assignment.k, 0);
  for (std::size_t c = 0; c < assignment.k; ++c) {
    const auto& centroid = assignment.centroids[c];
    peak[c] = static_cast<std::size_t>(std::max_element(centroid.begin(), centroid.end()) - centroid.begin());
  }
  std::vector<double> coverage(matrix.rows(), 0.0);
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    const auto row = matrix.row(r);
    const auto active = std::count_if(row.begin(), row.end(), [](double v) { return v > 0.0; });
    coverage[r] = matrix.cols() ? static_cast<double>(active) / static_cast<double>(matrix.cols()) : 0.0;
  }
  std::vector<std::size_t> order(matrix.rows());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const std::size_t cx = assignment.labels[x];
    const std::size_t cy = assignment.labels[y];
    if (cx != cy) return peak[cx] != peak[cy] ? peak[cx] < peak[cy] : cx < cy;
    if (coverage[x] != coverage[y]) return coverage[x] > coverage[y];
    return matrix.participants()[x] < matrix.participants()[y];
  });
  return order;
}

void write_clusters_csv(std::ostream& out, const ClusterAssignment& assignment, const CentralityMatrix& matrix,
                        std::span<const std::size_t> order) {
  out << "participant,cluster_id\n";
  for (std::size_t r : order) {
    write_csv_row(out, {matrix.participants()[r], std::to_string(assignment.labels[r])});
  }
}

void write_centroids_csv(std::ostream& out, const ClusterAssignment& assignment) {
  out << "cluster_id";
  const std::size_t dim = assignment.centroids.empty() ? 0 : assignment.centroids[0].size();
  for (std::size_t d = 0; d < dim; ++d) out << ",w" << d;
  out << '\n';
  for (std::size_t c = 0; c < assignment.k; ++c) {
    out << c;
    for (double v : assignment.centroids[c]) out << ',' << format_double(v);
    out << '\n';
  }
}

}  // namespace bugsna
