#include "nejl/projection.hpp"

#include <cmath>
#include <random>
#include <string>

#include "nejl/error.hpp"
#include "nejl/simd/kernels.hpp"

namespace nejl {

void ProjectionConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw UsageError("epsilon must lie in (0,1), got " + std::to_string(epsilon));
  }
  if (!(dim_constant > 0.0) || !std::isfinite(dim_constant)) {
    throw UsageError("dimension constant must be positive, got " + std::to_string(dim_constant));
  }
}

std::size_t target_dim(std::size_t n, const ProjectionConfig& cfg) {
  cfg.validate();
  if (n < 2) throw UsageError("target_dim: need at least 2 points");
  const double m = std::ceil(cfg.dim_constant * std::log2(static_cast<double>(n)) / (cfg.epsilon * cfg.epsilon));
  return m < 1.0 ? 1 : static_cast<std::size_t>(m);
}

JLMap gaussian_map(std::size_t m, std::size_t d, std::uint64_t seed) {
  if (m == 0) throw UsageError("gaussian_map: target dimension must be at least 1");
  JLMap map;
  map.matrix.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(static_cast<double>(m)));
  // Fill in row-major storage order so the stream layout is fixed.
  double* data = map.matrix.data();
  for (Eigen::Index k = 0; k < map.matrix.size(); ++k) data[k] = gauss(rng);
  return map;
}

RowMatrix JLMap::apply(const RowMatrix& coords) const {
  if (static_cast<std::size_t>(coords.cols()) != cols()) {
    throw DataError("JLMap::apply: coordinate dimension " + std::to_string(coords.cols()) +
                    " does not match map input dimension " + std::to_string(cols()));
  }
  RowMatrix out = RowMatrix::Zero(coords.rows(), matrix.rows());
  if (cols() == 0) return out;
  const auto& kern = simd::active();
  for (Eigen::Index i = 0; i < coords.rows(); ++i) {
    const double* x = coords.data() + i * coords.cols();
    double* y = out.data() + i * out.cols();
    for (Eigen::Index k = 0; k < matrix.rows(); ++k) {
      y[k] = kern.dot(matrix.data() + k * matrix.cols(), x, cols());
    }
  }
  return out;
}

RowMatrix project_classical(const RowMatrix& coords, const ProjectionConfig& cfg) {
  const std::size_t m = target_dim(static_cast<std::size_t>(coords.rows()), cfg);
  return gaussian_map(m, static_cast<std::size_t>(coords.cols()), cfg.seed).apply(coords);
}

ProjectedPQ project_pq(const PseudoEuclideanEmbedding& emb, const ProjectionConfig& cfg) {
  const std::size_t m = target_dim(emb.n(), cfg);
  ProjectedPQ out;
  if (emb.p() > 0) {
    out.pos = gaussian_map(m, emb.p(), cfg.seed).apply(emb.pos);
  } else {
    out.pos.resize(emb.pos.rows(), 0);
  }
  if (emb.q() > 0) {
    out.neg = gaussian_map(m, emb.q(), cfg.seed + 1).apply(emb.neg);
  } else {
    out.neg.resize(emb.neg.rows(), 0);
  }
  return out;
}

ProjectedPower project_power(const PowerRepresentation& rep, const ProjectionConfig& cfg) {
  ProjectedPower out;
  out.centers = project_classical(rep.centers, cfg);
  out.radius = rep.radius;
  return out;
}

RowMatrix abs_embedding(const PseudoEuclideanEmbedding& emb) {
  RowMatrix out(emb.pos.rows(), emb.pos.cols() + emb.neg.cols());
  out << emb.pos, emb.neg;
  return out;
}

namespace {

/// Symmetric pairwise squared distances, upper triangle computed once.
RowMatrix pairwise_sq(const RowMatrix& x) {
  const Eigen::Index n = x.rows();
  RowMatrix out = RowMatrix::Zero(n, n);
  if (x.cols() == 0) return out;
  const auto& kern = simd::active();
  const auto d = static_cast<std::size_t>(x.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* xi = x.data() + i * x.cols();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = kern.squared_distance(xi, x.data() + j * x.cols(), d);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

}  // namespace

RowMatrix reconstruct(const RowMatrix& coords) { return pairwise_sq(coords); }

RowMatrix reconstruct(const ProjectedPQ& projected) {
  return pairwise_sq(projected.pos) - pairwise_sq(projected.neg);
}

RowMatrix reconstruct(const ProjectedPower& projected) {
  RowMatrix out = pairwise_sq(projected.centers);
  out.array() -= 4.0 * projected.radius * projected.radius;
  out.diagonal().setZero();
  return out;
}

}  // namespace nejl
