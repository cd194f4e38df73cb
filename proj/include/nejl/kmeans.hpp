#pragma once

// k-means on a dissimilarity matrix (relational form) and Lloyd's
// algorithm in an embedded space, both scored by the relational cost on D.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nejl/dissim.hpp"
#include "nejl/matrix.hpp"

namespace nejl {

struct KMeansOptions {
  std::size_t k = 2;
  std::uint64_t seed = 0;
  std::size_t max_iter = 100;
  std::size_t restarts = 10;
};

struct KMeansResult {
  std::size_t k = 0;
  std::vector<std::size_t> assignment;
  double relational_cost = 0.0;
  std::size_t iterations = 0;  // of the winning restart
  std::uint64_t seed = 0;
  std::size_t empty_reseeds = 0;  // empty clusters refilled during the winning restart
};

/// sum over clusters C of (1 / (2|C|)) sum_{i,j in C} D_ij. Equals the
/// squared-Euclidean k-means objective when D holds squared distances.
double relational_cost(const DissimilarityMatrix& d, const std::vector<std::size_t>& assignment, std::size_t k);

/// sum_i ||x_i - centroid(C(i))||^2.
double coordinate_cost(const RowMatrix& coords, const std::vector<std::size_t>& assignment, std::size_t k);

/// Relational Lloyd directly on D: point-to-cluster dissimilarity
/// mean_{j in C} D_ij - (1/2) mean_{j,l in C} D_jl. Best of restarts.
/// Throws UsageError unless 1 <= k <= n.
KMeansResult relational_kmeans(const DissimilarityMatrix& d, const KMeansOptions& opts);

/// Lloyd with k-means++ seeding on the coordinate rows; the winning
/// restart is the one with the lowest relational cost on D.
KMeansResult kmeans_projected(const RowMatrix& coords, const DissimilarityMatrix& d, const KMeansOptions& opts);

}  // namespace nejl
