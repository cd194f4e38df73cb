#include "nejl/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "nejl/error.hpp"
#include "nejl/simd/kernels.hpp"

namespace nejl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_k(std::size_t k, std::size_t n) {
  if (k < 1 || k > n) {
    throw UsageError("k must lie in [1, " + std::to_string(n) + "], got " + std::to_string(k));
  }
}

void check_assignment(const std::vector<std::size_t>& assignment, std::size_t n, std::size_t k) {
  if (assignment.size() != n) throw DataError("assignment length does not match point count");
  for (std::size_t a : assignment) {
    if (a >= k) throw DataError("assignment label out of range");
  }
}

/// Per-point sums T(i, c) = sum_{j in c} D_ij.
RowMatrix cluster_sums(const RowMatrix& d, const std::vector<std::size_t>& assignment, std::size_t k) {
  const Eigen::Index n = d.rows();
  RowMatrix t = RowMatrix::Zero(n, static_cast<Eigen::Index>(k));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* row = d.data() + i * n;
    double* ti = t.data() + i * t.cols();
    for (Eigen::Index j = 0; j < n; ++j) ti[assignment[static_cast<std::size_t>(j)]] += row[j];
  }
  return t;
}

struct RelationalState {
  std::vector<std::size_t> assignment;
  double cost = kInf;
  std::size_t iterations = 0;
  std::size_t reseeds = 0;
};

RelationalState relational_run(const RowMatrix& d, std::size_t k, std::size_t max_iter, std::mt19937_64& rng) {
  const auto n = static_cast<std::size_t>(d.rows());

  // Seed with k distinct points; everyone else joins the seed with the smallest dissimilarity.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> seeds(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));

  RelationalState st;
  st.assignment.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double best = kInf;
    for (std::size_t c = 0; c < k; ++c) {
      if (seeds[c] == i) {
        st.assignment[i] = c;
        best = -kInf;
        break;
      }
      const double v = d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(seeds[c]));
      if (v < best) {
        best = v;
        st.assignment[i] = c;
      }
    }
  }

  std::vector<std::size_t> best_assignment = st.assignment;
  double best_cost = kInf;
  std::vector<std::size_t> size(k);
  std::vector<double> within(k);

  for (std::size_t iter = 0; iter <= max_iter; ++iter) {
    const RowMatrix t = cluster_sums(d, st.assignment, k);
    std::fill(size.begin(), size.end(), 0);
    std::fill(within.begin(), within.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      ++size[st.assignment[i]];
      within[st.assignment[i]] += t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(st.assignment[i]));
    }
    double cost = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (size[c] > 0) cost += within[c] / (2.0 * static_cast<double>(size[c]));
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_assignment = st.assignment;
      st.iterations = iter;
    }
    if (iter == max_iter) break;

    std::vector<std::size_t> next(n);
    std::vector<double> fit(n);
    for (std::size_t i = 0; i < n; ++i) {
      double best = kInf;
      std::size_t arg = st.assignment[i];
      for (std::size_t c = 0; c < k; ++c) {
        if (size[c] == 0) continue;
        const double s = static_cast<double>(size[c]);
        const double v = t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) / s - within[c] / (2.0 * s * s);
        if (v < best) {
          best = v;
          arg = c;
        }
      }
      next[i] = arg;
      fit[i] = best;
    }

    // Refill empty clusters with the worst-fitting point of a cluster that can spare one.
    std::vector<std::size_t> next_size(k, 0);
    for (std::size_t a : next) ++next_size[a];
    for (std::size_t c = 0; c < k; ++c) {
      if (next_size[c] > 0) continue;
      std::size_t worst = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (next_size[next[i]] > 1 && (worst == n || fit[i] > fit[worst])) worst = i;
      }
      if (worst == n) break;
      --next_size[next[worst]];
      next[worst] = c;
      next_size[c] = 1;
      fit[worst] = -kInf;
      ++st.reseeds;
    }

    if (next == st.assignment) break;
    st.assignment = std::move(next);
  }

  st.assignment = std::move(best_assignment);
  st.cost = best_cost;
  return st;
}

struct LloydState {
  std::vector<std::size_t> assignment;
  std::size_t iterations = 0;
  std::size_t reseeds = 0;
};

LloydState lloyd_run(const RowMatrix& x, std::size_t k, std::size_t max_iter, std::mt19937_64& rng) {
  const auto n = static_cast<std::size_t>(x.rows());
  const auto dim = static_cast<std::size_t>(x.cols());
  const auto& kern = simd::active();
  auto point = [&](std::size_t i) { return x.data() + static_cast<Eigen::Index>(i) * x.cols(); };

  // k-means++ seeding.
  RowMatrix centroids(static_cast<Eigen::Index>(k), x.cols());
  std::vector<double> nearest(n, kInf);
  std::vector<bool> chosen(n, false);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::size_t first = pick(rng);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t idx = first;
    if (c > 0) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) total += chosen[i] ? 0.0 : nearest[i];
      if (total > 0.0) {
        std::uniform_real_distribution<double> u(0.0, total);
        double r = u(rng);
        idx = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (chosen[i]) continue;
          r -= nearest[i];
          idx = i;
          if (r <= 0.0) break;
        }
      } else {
        // All remaining points coincide with a centroid: take an unchosen one at random.
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i) {
          if (!chosen[i]) rest.push_back(i);
        }
        idx = rest[std::uniform_int_distribution<std::size_t>(0, rest.size() - 1)(rng)];
      }
    }
    chosen[idx] = true;
    std::copy(point(idx), point(idx) + dim, centroids.data() + static_cast<Eigen::Index>(c) * x.cols());
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], kern.squared_distance(point(i), point(idx), dim));
    }
  }

  LloydState st;
  st.assignment.assign(n, k);
  std::vector<double> dist(n);
  for (std::size_t iter = 0; iter < std::max<std::size_t>(1, max_iter); ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      double best = kInf;
      std::size_t arg = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double v =
            kern.squared_distance(point(i), centroids.data() + static_cast<Eigen::Index>(c) * x.cols(), dim);
        if (v < best) {
          best = v;
          arg = c;
        }
      }
      dist[i] = best;
      if (arg != st.assignment[i]) {
        st.assignment[i] = arg;
        changed = true;
      }
    }

    std::vector<std::size_t> size(k, 0);
    for (std::size_t a : st.assignment) ++size[a];
    for (std::size_t c = 0; c < k; ++c) {
      if (size[c] > 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (size[st.assignment[i]] > 1 && (far == n || dist[i] > dist[far])) far = i;
      }
      if (far == n) break;
      --size[st.assignment[far]];
      st.assignment[far] = c;
      size[c] = 1;
      dist[far] = 0.0;
      ++st.reseeds;
      changed = true;
    }

    st.iterations = iter + 1;
    if (!changed) break;

    centroids.setZero();
    for (std::size_t i = 0; i < n; ++i) {
      kern.axpy(1.0, point(i), centroids.data() + static_cast<Eigen::Index>(st.assignment[i]) * x.cols(), dim);
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (size[c] > 0) centroids.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(size[c]);
    }
  }
  return st;
}

}  // namespace

double relational_cost(const DissimilarityMatrix& d, const std::vector<std::size_t>& assignment, std::size_t k) {
  check_assignment(assignment, d.n(), k);
  std::vector<double> within(k, 0.0);
  std::vector<std::size_t> size(k, 0);
  const auto& e = d.entries();
  for (std::size_t i = 0; i < d.n(); ++i) {
    ++size[assignment[i]];
    for (std::size_t j = i + 1; j < d.n(); ++j) {
      if (assignment[i] == assignment[j]) {
        within[assignment[i]] += 2.0 * e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  double cost = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    if (size[c] > 0) cost += within[c] / (2.0 * static_cast<double>(size[c]));
  }
  return cost;
}

double coordinate_cost(const RowMatrix& coords, const std::vector<std::size_t>& assignment, std::size_t k) {
  const auto n = static_cast<std::size_t>(coords.rows());
  check_assignment(assignment, n, k);
  RowMatrix centroids = RowMatrix::Zero(static_cast<Eigen::Index>(k), coords.cols());
  std::vector<std::size_t> size(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    centroids.row(static_cast<Eigen::Index>(assignment[i])) += coords.row(static_cast<Eigen::Index>(i));
    ++size[assignment[i]];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (size[c] > 0) centroids.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(size[c]);
  }
  double cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cost += (coords.row(static_cast<Eigen::Index>(i)) - centroids.row(static_cast<Eigen::Index>(assignment[i])))
                .squaredNorm();
  }
  return cost;
}

KMeansResult relational_kmeans(const DissimilarityMatrix& d, const KMeansOptions& opts) {
  check_k(opts.k, d.n());
  std::mt19937_64 rng(opts.seed);
  KMeansResult best;
  best.k = opts.k;
  best.seed = opts.seed;
  best.relational_cost = kInf;
  const std::size_t restarts = std::max<std::size_t>(1, opts.restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    RelationalState st = relational_run(d.entries(), opts.k, opts.max_iter, rng);
    if (st.cost < best.relational_cost) {
      best.relational_cost = st.cost;
      best.assignment = std::move(st.assignment);
      best.iterations = st.iterations;
      best.empty_reseeds = st.reseeds;
    }
  }
  return best;
}

KMeansResult kmeans_projected(const RowMatrix& coords, const DissimilarityMatrix& d, const KMeansOptions& opts) {
  if (static_cast<std::size_t>(coords.rows()) != d.n()) {
    throw DataError("kmeans_projected: coordinate rows do not match D");
  }
  check_k(opts.k, d.n());
  std::mt19937_64 rng(opts.seed);
  KMeansResult best;
  best.k = opts.k;
  best.seed = opts.seed;
  best.relational_cost = kInf;
  const std::size_t restarts = std::max<std::size_t>(1, opts.restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    LloydState st = lloyd_run(coords, opts.k, opts.max_iter, rng);
    const double cost = relational_cost(d, st.assignment, opts.k);
    if (cost < best.relational_cost) {
      best.relational_cost = cost;
      best.assignment = std::move(st.assignment);
      best.iterations = st.iterations;
      best.empty_reseeds = st.reseeds;
    }
  }
  return best;
}

}  // namespace nejl
