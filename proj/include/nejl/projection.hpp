#pragma once

// Seeded Gaussian random projection and the three JL transforms: classical,
// block-wise on the (p,q) parts, and on power-representation centers.

#include <cstddef>
#include <cstdint>

#include "nejl/dissim.hpp"
#include "nejl/matrix.hpp"
#include "nejl/pq_embed.hpp"
#include "nejl/power_embed.hpp"

namespace nejl {

/// Target dimension m = ceil(dim_constant * log2(n) / epsilon^2).
struct ProjectionConfig {
  double epsilon = 0.5;
  double dim_constant = 2.0;
  std::uint64_t seed = 0;

  /// Throws UsageError unless epsilon in (0,1) and dim_constant > 0.
  void validate() const;
};

/// m x d matrix with i.i.d. N(0, 1/m) entries, reproducible from (seed, m, d).
struct JLMap {
  RowMatrix matrix;

  [[nodiscard]] std::size_t rows() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
  [[nodiscard]] std::size_t cols() const noexcept { return static_cast<std::size_t>(matrix.cols()); }

  /// Row-wise image of an n x d coordinate matrix; returns n x m. A d = 0
  /// map sends every point to the zero vector.
  [[nodiscard]] RowMatrix apply(const RowMatrix& coords) const;
};

struct ProjectedPQ {
  RowMatrix pos;  // n x p'
  RowMatrix neg;  // n x q'

  [[nodiscard]] std::size_t p() const noexcept { return static_cast<std::size_t>(pos.cols()); }
  [[nodiscard]] std::size_t q() const noexcept { return static_cast<std::size_t>(neg.cols()); }
};

struct ProjectedPower {
  RowMatrix centers;  // n x m
  double radius = 0.0;
};

/// Throws UsageError for n < 2 or an invalid config.
std::size_t target_dim(std::size_t n, const ProjectionConfig& cfg);

JLMap gaussian_map(std::size_t m, std::size_t d, std::uint64_t seed);

/// One Gaussian map with m = target_dim(n) applied to every row.
RowMatrix project_classical(const RowMatrix& coords, const ProjectionConfig& cfg);

/// Independent maps on the positive (seed) and negative (seed + 1) parts,
/// each to target_dim(n). An empty part stays empty.
ProjectedPQ project_pq(const PseudoEuclideanEmbedding& emb, const ProjectionConfig& cfg);

/// Gaussian map on the centers; radius carried through.
ProjectedPower project_power(const PowerRepresentation& rep, const ProjectionConfig& cfg);

/// Absolute-eigenvalue embedding: pos and neg concatenated and treated as
/// Euclidean. This is the classical-JL baseline input for a bare matrix.
RowMatrix abs_embedding(const PseudoEuclideanEmbedding& emb);

/// Pairwise squared Euclidean distances of the rows.
RowMatrix reconstruct(const RowMatrix& coords);
/// Pairwise (p',q') interval squares.
RowMatrix reconstruct(const ProjectedPQ& projected);
/// Pairwise power distances with the common radius; diagonal is 0.
RowMatrix reconstruct(const ProjectedPower& projected);

}  // namespace nejl
