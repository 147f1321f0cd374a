#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bugsna/activity.hpp"

namespace bugsna {

// 1 - a.b / (|a| |b|), clamped to [0, 2]. Throws std::invalid_argument on
// length mismatch or a zero-norm input.
double cosine_distance(std::span<const double> a, std::span<const double> b);

struct ClusterAssignment {
  std::size_t k = 0;
  std::vector<std::size_t> labels;  // cluster id per input row
  std::vector<std::vector<double>> centroids;  // unit norm
  std::uint64_t seed = 0;
  std::size_t iterations_run = 0;
  bool converged = false;
  // Sum of cosine distances to the own centroid after each update step.
  std::vector<double> objective_history;

  std::vector<std::size_t> cluster_sizes() const;
};

inline constexpr std::size_t kDefaultClusterCount = 100;
inline constexpr std::size_t kDefaultMaxIterations = 300;

// Spherical K-means under cosine distance. Rows are scaled to unit length
// (cosine distance ignores scale), centroids are the renormalized mean of
// their members. Seeding is greedy k-means++ on squared cosine distance
// driven by a seeded mt19937_64; an emptied cluster takes the row farthest
// from its centroid. Throws std::invalid_argument for k == 0, k > rows or
// zero rows, and std::logic_error should the objective ever increase.
ClusterAssignment kmeans(std::span<const std::span<const double>> rows, std::size_t k, std::uint64_t seed,
                         std::size_t max_iter = kDefaultMaxIterations);
ClusterAssignment kmeans(const CentralityMatrix& matrix, std::size_t k, std::uint64_t seed,
                         std::size_t max_iter = kDefaultMaxIterations);

// Sum over rows of the cosine distance to the assigned centroid.
double clustering_objective(std::span<const std::span<const double>> rows, const ClusterAssignment& assignment);

// Rand index: fraction of row pairs on which two partitions agree
// (together in both or apart in both). 1 for fewer than two rows.
double pair_counting_agreement(std::span<const std::size_t> a, std::span<const std::size_t> b);

// Rows grouped by cluster. Clusters ordered by the window of their
// centroid's peak, then cluster id; rows inside a cluster by descending
// coverage, then participant.
std::vector<std::size_t> order_rows_for_heatmap(const ClusterAssignment& assignment,
                                                const CentralityMatrix& matrix);

// participant,cluster_id in the given row order.
void write_clusters_csv(std::ostream& out, const ClusterAssignment& assignment, const CentralityMatrix& matrix,
                        std::span<const std::size_t> order);
// cluster_id,w0,...,wN
void write_centroids_csv(std::ostream& out, const ClusterAssignment& assignment);

}  // namespace bugsna
