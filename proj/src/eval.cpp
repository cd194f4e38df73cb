#include "nejl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nejl/error.hpp"
#include "nejl/simd/kernels.hpp"

namespace nejl {
namespace {

void check_shape(const DissimilarityMatrix& d, const RowMatrix& dhat) {
  const auto n = static_cast<Eigen::Index>(d.n());
  if (dhat.rows() != n || dhat.cols() != n) {
    throw DataError("shape mismatch: D is " + std::to_string(n) + "x" + std::to_string(n) + ", reconstruction is " +
                    std::to_string(dhat.rows()) + "x" + std::to_string(dhat.cols()));
  }
}

double part_sq(const RowMatrix& m, Eigen::Index i, Eigen::Index j, const simd::KernelTable& kern) {
  if (m.cols() == 0) return 0.0;
  return kern.squared_distance(m.data() + i * m.cols(), m.data() + j * m.cols(), static_cast<std::size_t>(m.cols()));
}

}  // namespace

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::jl:
      return "jl";
    case Method::jl_pq:
      return "jl-pq";
    case Method::jl_power:
      return "jl-power";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "jl") return Method::jl;
  if (name == "jl-pq") return Method::jl_pq;
  if (name == "jl-power") return Method::jl_power;
  throw UsageError("unknown method '" + std::string(name) + "' (expected jl, jl-pq or jl-power)");
}

RelErrorStats relative_error_stats(const DissimilarityMatrix& d, const RowMatrix& dhat) {
  check_shape(d, dhat);
  const auto n = static_cast<Eigen::Index>(d.n());
  RelErrorStats stats;
  std::vector<double> errs;
  errs.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dij = d.entries()(i, j);
      if (dij == 0.0) {
        ++stats.excluded;
        continue;
      }
      const double h = dhat(i, j);
      errs.push_back(std::isfinite(h) ? std::abs(dij - h) / std::abs(dij) : std::numeric_limits<double>::infinity());
    }
  }
  stats.counted = errs.size();
  if (errs.empty()) return stats;

  double total = 0.0;
  for (double e : errs) {
    stats.max_rel = std::max(stats.max_rel, e);
    total += e;
  }
  stats.mean_rel = total / static_cast<double>(errs.size());

  const std::size_t mid = errs.size() / 2;
  std::nth_element(errs.begin(), errs.begin() + static_cast<std::ptrdiff_t>(mid), errs.end());
  if (errs.size() % 2 == 1) {
    stats.median_rel = errs[mid];
  } else {
    const double upper = errs[mid];
    const double lower = *std::max_element(errs.begin(), errs.begin() + static_cast<std::ptrdiff_t>(mid));
    stats.median_rel = 0.5 * (lower + upper);
  }
  return stats;
}

PqBoundCheck validate_pq_bound(const DissimilarityMatrix& d, const PseudoEuclideanEmbedding& emb,
                               const RowMatrix& dhat, double epsilon, bool keep_records) {
  check_shape(d, dhat);
  if (emb.n() != d.n()) throw DataError("validate_pq_bound: embedding size does not match D");
  const auto n = static_cast<Eigen::Index>(d.n());
  const auto& kern = simd::active();

  PqBoundCheck out;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double a = part_sq(emb.pos, i, j, kern);
      const double b = part_sq(emb.neg, i, j, kern);
      const double c = distortion_factor(a + b, a - b);
      if (!std::isfinite(c)) {
        ++out.infinite_pairs;
        continue;
      }
      const double dij = d.entries()(i, j);
      const double width = epsilon * std::abs(dij) * c;
      const double lower = dij - width;
      const double upper = dij + width;
      const double h = dhat(i, j);
      const bool bad = !(h >= lower && h <= upper);
      ++out.checked;
      if (bad) ++out.violations;
      if (keep_records) {
        out.records.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), dij, h, c, lower, upper, bad});
      }
    }
  }
  out.violation_rate = out.checked ? static_cast<double>(out.violations) / static_cast<double>(out.checked) : 0.0;
  return out;
}

PowerResidualCheck validate_power_residual(const DissimilarityMatrix& d, double radius, const RowMatrix& dhat,
                                           double epsilon, bool keep_records) {
  check_shape(d, dhat);
  const auto n = static_cast<Eigen::Index>(d.n());

  PowerResidualCheck out;
  out.bound = 4.0 * epsilon * radius * radius;
  std::size_t within = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dij = d.entries()(i, j);
      const double h = dhat(i, j);
      double residual = std::abs(h - dij) - epsilon * std::abs(dij);
      if (!std::isfinite(residual)) residual = std::numeric_limits<double>::infinity();
      residual = std::max(0.0, residual);
      const bool ok = residual <= out.bound;
      ++out.checked;
      if (ok) ++within;
      out.max_residual = std::max(out.max_residual, residual);
      if (keep_records) {
        out.records.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), dij, h, residual,
                               dij - epsilon * std::abs(dij), dij + epsilon * std::abs(dij), !ok});
      }
    }
  }
  out.fraction_within = out.checked ? static_cast<double>(within) / static_cast<double>(out.checked) : 1.0;
  return out;
}

}  // namespace nejl
