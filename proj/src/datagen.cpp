#include "nejl/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <string>

#include "nejl/error.hpp"
#include "nejl/simd/kernels.hpp"

namespace nejl {

DissimilarityMatrix gen_simplex(const SimplexSpec& spec) {
  if (spec.n < 2) throw UsageError("gen_simplex: n must be at least 2");
  if (spec.dominance < 0.0 || !std::isfinite(spec.dominance)) {
    throw UsageError("gen_simplex: dominance must be a finite positive number");
  }
  const double alpha = spec.dominance > 0.0 ? spec.dominance : SimplexSpec::default_dominance(spec.n);

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unif(0.0, alpha);
  std::vector<double> z(spec.n);
  for (double& v : z) v = unif(rng);

  const auto n = static_cast<Eigen::Index>(spec.n);
  RowMatrix d = RowMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = 2.0 - std::abs(z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return validate_matrix(d);
}

DissimilarityMatrix gen_balls(const BallSpec& spec) {
  if (spec.n < 2) throw UsageError("gen_balls: n must be at least 2");
  if (spec.dim == 0) throw UsageError("gen_balls: dim must be at least 1");
  if (!(spec.r_min > 0.0 && spec.r_min <= spec.r_max) || !std::isfinite(spec.r_max)) {
    throw UsageError("gen_balls: need 0 < r_min <= r_max");
  }

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(spec.r_min, spec.r_max);

  const auto n = static_cast<Eigen::Index>(spec.n);
  RowMatrix centers(n, static_cast<Eigen::Index>(spec.dim));
  for (Eigen::Index k = 0; k < centers.size(); ++k) centers.data()[k] = gauss(rng);
  std::vector<double> radii(spec.n);
  for (double& r : radii) r = unif(rng);

  RowMatrix d = RowMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double gap = std::sqrt(simd::squared_distance(row_span(centers, i), row_span(centers, j))) -
                         radii[static_cast<std::size_t>(i)] - radii[static_cast<std::size_t>(j)];
      const double v = std::max(0.0, gap);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return validate_matrix(d);
}

GraphHops graph_hops(const std::vector<Edge>& edges) {
  if (edges.empty()) throw DataError("graph_hops: empty edge list");

  std::size_t nv = 0;
  for (const auto& [u, v] : edges) nv = std::max({nv, u + 1, v + 1});

  std::vector<std::vector<std::size_t>> adj(nv);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }

  // Connected components, keep the largest (lowest label on ties).
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> comp(nv, kNone);
  std::vector<std::size_t> comp_size;
  for (std::size_t s = 0; s < nv; ++s) {
    if (comp[s] != kNone) continue;
    const std::size_t label = comp_size.size();
    std::size_t count = 0;
    std::queue<std::size_t> frontier;
    frontier.push(s);
    comp[s] = label;
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      ++count;
      for (std::size_t w : adj[u]) {
        if (comp[w] == kNone) {
          comp[w] = label;
          frontier.push(w);
        }
      }
    }
    comp_size.push_back(count);
  }
  const auto largest =
      static_cast<std::size_t>(std::max_element(comp_size.begin(), comp_size.end()) - comp_size.begin());

  std::vector<std::size_t> vertices;
  std::vector<std::size_t> index(nv, kNone);
  for (std::size_t v = 0; v < nv; ++v) {
    if (comp[v] == largest) {
      index[v] = vertices.size();
      vertices.push_back(v);
    }
  }
  if (vertices.size() < 2) throw DataError("graph_hops: largest connected component has fewer than 2 vertices");

  const auto m = static_cast<Eigen::Index>(vertices.size());
  RowMatrix d = RowMatrix::Zero(m, m);
  std::vector<std::size_t> dist(nv);
  for (Eigen::Index si = 0; si < m; ++si) {
    std::fill(dist.begin(), dist.end(), kNone);
    const std::size_t s = vertices[static_cast<std::size_t>(si)];
    std::queue<std::size_t> frontier;
    frontier.push(s);
    dist[s] = 0;
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      d(si, static_cast<Eigen::Index>(index[u])) = static_cast<double>(dist[u]);
      for (std::size_t w : adj[u]) {
        if (dist[w] == kNone) {
          dist[w] = dist[u] + 1;
          frontier.push(w);
        }
      }
    }
  }

  GraphHops out{validate_matrix(d), std::move(vertices), comp_size.size() > 1, nv};
  return out;
}

}  // namespace nejl
