#include "nejl/power_embed.hpp"

#include <cmath>
#include <string>

#include "nejl/error.hpp"
#include "nejl/simd/kernels.hpp"

namespace nejl {

double power_distance(std::span<const double> c1, double r1, std::span<const double> c2, double r2) {
  if (c1.size() != c2.size()) {
    throw DataError("power_distance: dimension mismatch (" + std::to_string(c1.size()) + " vs " +
                    std::to_string(c2.size()) + ")");
  }
  if (r1 < 0.0 || r2 < 0.0) throw DataError("power_distance: negative radius");
  const double rr = r1 + r2;
  return simd::active().squared_distance(c1.data(), c2.data(), c1.size()) - rr * rr;
}

double power_radius(const GramDecomposition& dec) {
  const double en = dec.smallest();
  if (en >= -dec.tau) return 0.0;
  return std::sqrt(-en / 2.0);
}

double theorem_radius(const GramDecomposition& dec) {
  const double en = dec.smallest();
  if (en >= -dec.tau) return 0.0;
  return std::sqrt(-en) / 2.0;
}

RowMatrix euclideanize(const DissimilarityMatrix& d, double radius) {
  if (!(radius >= 0.0)) throw UsageError("euclideanize: radius must be non-negative");
  const double shift = 4.0 * radius * radius;
  RowMatrix e = d.entries();
  e.array() += shift;
  e.diagonal().setZero();
  return e;
}

RowMatrix recover_centers(const RowMatrix& e, double tau_rel) {
  const GramDecomposition dec = decompose(center_gram(e), tau_rel);
  if (dec.smallest() < -10.0 * dec.tau) {
    throw NumericalError("recover_centers: input is not a Euclidean squared-distance matrix (Gram eigenvalue " +
                         std::to_string(dec.smallest()) + " below -10*tau = " + std::to_string(-10.0 * dec.tau) + ")");
  }
  const auto n = static_cast<Eigen::Index>(dec.n());
  RowMatrix centers(n, static_cast<Eigen::Index>(dec.p));
  // Eigenvalues are descending, so the first p are the ones above tau.
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(dec.p); ++k) {
    centers.col(k) = std::sqrt(dec.eigenvalues(k)) * dec.eigenvectors.col(k);
  }
  return centers;
}

PowerRepresentation represent_power(const DissimilarityMatrix& d, const GramDecomposition& dec,
                                    std::optional<double> radius_override) {
  PowerRepresentation rep;
  rep.radius = radius_override.value_or(power_radius(dec));
  rep.centers = recover_centers(euclideanize(d, rep.radius));
  return rep;
}

double silhouette_gaussian(const GaussianCluster& a, const GaussianCluster& b) {
  return power_distance({a.mean.data(), static_cast<std::size_t>(a.mean.size())}, a.sigma,
                        {b.mean.data(), static_cast<std::size_t>(b.mean.size())}, b.sigma);
}

double silhouette_normalized(const GaussianCluster& a, const GaussianCluster& b) {
  if (a.mean.size() != b.mean.size()) throw DataError("silhouette_normalized: dimension mismatch");
  const double sep = (a.mean - b.mean).squaredNorm();
  const double spread = (a.sigma + b.sigma) * (a.sigma + b.sigma);
  if (sep + spread == 0.0) return -1.0;
  return (sep - spread) / (sep + spread);
}

}  // namespace nejl
