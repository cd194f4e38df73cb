#pragma once

// Signature-(p,q) coordinates recovered from a centered Gram matrix, plus
// the indefinite and Euclidean interval squares they induce.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "nejl/dissim.hpp"
#include "nejl/matrix.hpp"

namespace nejl {

/// n points in R^{p,q}, stored split: row i of pos is x_i^(p), row i of neg is x_i^(q).
struct PseudoEuclideanEmbedding {
  RowMatrix pos;  // n x p
  RowMatrix neg;  // n x q

  [[nodiscard]] std::size_t n() const noexcept { return static_cast<std::size_t>(pos.rows()); }
  [[nodiscard]] std::size_t p() const noexcept { return static_cast<std::size_t>(pos.cols()); }
  [[nodiscard]] std::size_t q() const noexcept { return static_cast<std::size_t>(neg.cols()); }
};

/// Coordinate k of point i is sqrt|lambda_k| * U(i,k); columns with
/// |lambda_k| <= tau are dropped.
PseudoEuclideanEmbedding embed_pq(const GramDecomposition& dec);

/// ||x_i^(p) - x_j^(p)||^2 - ||x_i^(q) - x_j^(q)||^2. May be negative.
double pq_interval(const PseudoEuclideanEmbedding& emb, std::size_t i, std::size_t j);

/// ||x_i - x_j||^2 over all p+q coordinates. Never negative.
double euclid_interval(const PseudoEuclideanEmbedding& emb, std::size_t i, std::size_t j);

/// Value returned by distortion_factor for null-like pairs
/// (zero interval square, nonzero Euclidean separation).
inline constexpr double kInfiniteDistortion = std::numeric_limits<double>::infinity();

/// C_ij = |euclid_interval / pq_interval|, >= 1. Returns kInfiniteDistortion
/// when the interval square is 0 but the points differ, and 1 when both are 0.
/// Throws std::invalid_argument for i == j.
double distortion_factor(const PseudoEuclideanEmbedding& emb, std::size_t i, std::size_t j);

/// Same, from precomputed interval squares.
double distortion_factor(double euclid, double pq) noexcept;

struct NormRatioSample {
  std::vector<double> ratios;  // ||v||_E^2 / ||v||_{p,q}^2
  bool degenerate = false;     // p == q: expected ratio undefined
  double expected = 0.0;       // (p+q)/(p-q), NaN when degenerate
};

/// Draws `trials` uniform unit vectors on S^{p+q-1} (normalized standard
/// Gaussians) and returns their Euclidean / (p,q) norm-square ratios.
NormRatioSample norm_ratio_sample(std::size_t p, std::size_t q, std::size_t trials, std::uint64_t seed);

}  // namespace nejl
