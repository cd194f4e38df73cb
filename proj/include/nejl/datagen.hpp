#pragma once

// Synthetic non-Euclidean datasets and graph hop-distance ingestion.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "nejl/dissim.hpp"

namespace nejl {

/// Random simplex: point i is a vertex of the regular simplex with edge
/// sqrt(2) (coordinates e_i) followed by a final coordinate z_i ~ U[0, dominance].
/// The final coordinate enters with a minus sign and unsquared:
///   D_ij = ||s_i - s_j||^2 - |z_i - z_j| = 2 - |z_i - z_j|.
/// |z_i - z_j| is a negative-type kernel, so the subtracted part of the Gram
/// matrix has full rank and most eigenvalues turn negative once it dominates.
struct SimplexSpec {
  std::size_t n = 0;
  double dominance = 0.0;  // 0 selects default_dominance(n)
  std::uint64_t seed = 0;

  /// 20 n: about 90% negative eigenvalues at every n >= 100.
  [[nodiscard]] static double default_dominance(std::size_t n) noexcept { return 20.0 * static_cast<double>(n); }
};

/// Balls with standard Gaussian centers in R^dim and radii U[r_min, r_max];
/// D_ij is the surface gap max(0, ||c_i - c_j|| - r_i - r_j).
struct BallSpec {
  std::size_t n = 0;
  std::size_t dim = 10;
  double r_min = 0.5;
  double r_max = 2.0;
  std::uint64_t seed = 0;
};

DissimilarityMatrix gen_simplex(const SimplexSpec& spec);
DissimilarityMatrix gen_balls(const BallSpec& spec);

using Edge = std::pair<std::size_t, std::size_t>;

struct GraphHops {
  DissimilarityMatrix matrix;
  /// Original vertex id of each matrix row (the largest connected component).
  std::vector<std::size_t> vertices;
  /// True when the graph was disconnected and only the largest component was kept.
  bool truncated = false;
  std::size_t original_vertices = 0;
};

/// Unweighted BFS hop counts. Vertex ids are 0..max id; self-loops and
/// duplicates are ignored. Throws DataError on an empty edge list.
GraphHops graph_hops(const std::vector<Edge>& edges);

}  // namespace nejl
