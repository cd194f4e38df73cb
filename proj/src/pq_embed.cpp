#include "nejl/pq_embed.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "nejl/error.hpp"
#include "nejl/simd/kernels.hpp"

namespace nejl {
namespace {

void check_index(const PseudoEuclideanEmbedding& emb, std::size_t i, std::size_t j) {
  if (i >= emb.n() || j >= emb.n()) {
    throw std::out_of_range("point index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range for n=" +
                            std::to_string(emb.n()));
  }
}

double part_distance(const RowMatrix& m, std::size_t i, std::size_t j) {
  if (m.cols() == 0) return 0.0;
  return simd::squared_distance(row_span(m, static_cast<Eigen::Index>(i)), row_span(m, static_cast<Eigen::Index>(j)));
}

}  // namespace

PseudoEuclideanEmbedding embed_pq(const GramDecomposition& dec) {
  const auto n = static_cast<Eigen::Index>(dec.n());
  PseudoEuclideanEmbedding emb;
  emb.pos.resize(n, static_cast<Eigen::Index>(dec.p));
  emb.neg.resize(n, static_cast<Eigen::Index>(dec.q));

  Eigen::Index pc = 0;
  Eigen::Index qc = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = dec.eigenvalues(k);
    if (std::abs(lambda) <= dec.tau) continue;
    const double s = std::sqrt(std::abs(lambda));
    if (lambda > 0) {
      emb.pos.col(pc++) = s * dec.eigenvectors.col(k);
    } else {
      emb.neg.col(qc++) = s * dec.eigenvectors.col(k);
    }
  }
  return emb;
}

double pq_interval(const PseudoEuclideanEmbedding& emb, std::size_t i, std::size_t j) {
  check_index(emb, i, j);
  return part_distance(emb.pos, i, j) - part_distance(emb.neg, i, j);
}

double euclid_interval(const PseudoEuclideanEmbedding& emb, std::size_t i, std::size_t j) {
  check_index(emb, i, j);
  return part_distance(emb.pos, i, j) + part_distance(emb.neg, i, j);
}

double distortion_factor(double euclid, double pq) noexcept {
  if (pq == 0.0) return euclid == 0.0 ? 1.0 : kInfiniteDistortion;
  return std::abs(euclid / pq);
}

double distortion_factor(const PseudoEuclideanEmbedding& emb, std::size_t i, std::size_t j) {
  check_index(emb, i, j);
  if (i == j) throw std::invalid_argument("distortion_factor: i == j");
  const double a = part_distance(emb.pos, i, j);
  const double b = part_distance(emb.neg, i, j);
  return distortion_factor(a + b, a - b);
}

NormRatioSample norm_ratio_sample(std::size_t p, std::size_t q, std::size_t trials, std::uint64_t seed) {
  if (p + q == 0) throw UsageError("norm_ratio_sample: p + q must be at least 1");
  if (trials == 0) throw UsageError("norm_ratio_sample: trials must be at least 1");

  NormRatioSample out;
  out.degenerate = p == q;
  out.expected = out.degenerate ? std::nan("")
                                : static_cast<double>(p + q) / (static_cast<double>(p) - static_cast<double>(q));
  out.ratios.reserve(trials);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(p + q);
  for (std::size_t t = 0; t < trials; ++t) {
    for (double& x : v) x = gauss(rng);
    const double norm = std::sqrt(simd::dot(v, v));
    double pos = 0.0;
    double neg = 0.0;
    for (std::size_t k = 0; k < p; ++k) pos += (v[k] / norm) * (v[k] / norm);
    for (std::size_t k = p; k < p + q; ++k) neg += (v[k] / norm) * (v[k] / norm);
    out.ratios.push_back((pos + neg) / (pos - neg));
  }
  return out;
}

}  // namespace nejl
