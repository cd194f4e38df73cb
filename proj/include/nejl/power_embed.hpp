#pragma once

// Generalized power distances of weighted points. Any symmetric hollow D is
// the power-distance matrix of n equal-radius balls: D = E - 4r^2 (J - I)
// with E a squared Euclidean distance matrix once 2r^2 >= |e_n|.

#include <cstddef>
#include <optional>
#include <span>

#include "nejl/dissim.hpp"
#include "nejl/matrix.hpp"

namespace nejl {

/// n equal-radius balls. ||c_i - c_j||^2 - 4 r^2 reproduces D_ij for i != j.
struct PowerRepresentation {
  RowMatrix centers;  // n x d
  double radius = 0.0;

  [[nodiscard]] std::size_t n() const noexcept { return static_cast<std::size_t>(centers.rows()); }
  [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(centers.cols()); }
};

/// Isotropic Gaussian N(mean, (sigma^2 / dim) I); sigma^2 is the total variance.
struct GaussianCluster {
  Vector mean;
  double sigma = 0.0;
};

/// ||c1 - c2||^2 - (r1 + r2)^2. Throws DataError on dimension mismatch or negative radius.
double power_distance(std::span<const double> c1, double r1, std::span<const double> c2, double r2);

/// Minimal common radius making E Euclidean: sqrt(max(0, -e_n) / 2), and
/// exactly 0 when e_n >= -tau.
double power_radius(const GramDecomposition& dec);

/// The radius sqrt|e_n| / 2 as printed in the power-JL theorem statement.
/// It gives 2r^2 = |e_n|/2, which is below the Euclidean threshold whenever e_n < 0.
double theorem_radius(const GramDecomposition& dec);

/// E = D + 4 r^2 (J - I): off-diagonal shift, zero diagonal.
RowMatrix euclideanize(const DissimilarityMatrix& d, double radius);

/// Classical MDS coordinates of a squared Euclidean distance matrix: columns
/// for eigenvalues > tau of Gram(E), eigenvalues in [-10 tau, 0) clamped to 0.
/// Throws NumericalError if Gram(E) has an eigenvalue below -10 tau.
RowMatrix recover_centers(const RowMatrix& e, double tau_rel = kDefaultTauRel);

/// Full pipeline: r = radius_override or power_radius(dec), then
/// recover_centers(euclideanize(d, r)).
PowerRepresentation represent_power(const DissimilarityMatrix& d, const GramDecomposition& dec,
                                    std::optional<double> radius_override = std::nullopt);

/// Closed-form Gaussian silhouette ||mu_a - mu_b||^2 - (sigma_a + sigma_b)^2.
/// Evaluated through power_distance.
double silhouette_gaussian(const GaussianCluster& a, const GaussianCluster& b);

/// Normalized score in [-1, 1]; -1 when both terms vanish.
double silhouette_normalized(const GaussianCluster& a, const GaussianCluster& b);

}  // namespace nejl
