#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "nejl/datagen.hpp"
#include "nejl/error.hpp"
#include "nejl/eval.hpp"
#include "nejl/pipeline.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace nejl;

TEST_CASE("method names") {
  for (Method m : {Method::jl, Method::jl_pq, Method::jl_power}) CHECK(parse_method(method_name(m)) == m);
  CHECK_THROWS_AS(parse_method("pca"), UsageError);
}

TEST_CASE("relative error: identity, doubling, single pair") {
  const auto d = validate_matrix(testutil::rows({{0, 1, 0}, {1, 0, 2}, {0, 2, 0}}));
  const auto same = relative_error_stats(d, d.entries());
  CHECK(same.max_rel == 0.0);
  CHECK(same.mean_rel == 0.0);
  CHECK(same.median_rel == 0.0);
  CHECK(same.excluded == 1);
  CHECK(same.counted == 2);

  std::mt19937_64 rng(3);
  const auto r = testutil::random_hollow(10, rng);
  const auto doubled = relative_error_stats(r, 2.0 * r.entries());
  CHECK(doubled.max_rel == doctest::Approx(1.0));
  CHECK(doubled.mean_rel == doctest::Approx(1.0));
  CHECK(doubled.median_rel == doctest::Approx(1.0));
  CHECK(doubled.excluded == 0);

  const auto two = validate_matrix(testutil::rows({{0, 1}, {1, 0}}));
  RowMatrix dhat(2, 2);
  dhat << 0, 1.5, 1.5, 0;
  const auto s = relative_error_stats(two, dhat);
  CHECK(s.max_rel == 0.5);
  CHECK(s.mean_rel == 0.5);
  CHECK(s.median_rel == 0.5);
  CHECK(s.excluded == 0);
}

TEST_CASE("relative error: median of an even count and infinities") {
  const auto d = validate_matrix(testutil::rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  RowMatrix dhat(3, 3);
  dhat << 0, 1.1, 1.3, 1.1, 0, std::numeric_limits<double>::infinity(), 1.3, std::numeric_limits<double>::infinity(), 0;
  const auto s = relative_error_stats(d, dhat);
  CHECK(std::isinf(s.max_rel));
  CHECK(std::isinf(s.mean_rel));
  CHECK(s.median_rel == doctest::Approx(0.3));

  RowMatrix four = RowMatrix::Zero(3, 3);
  four << 0, 1.1, 1.2, 1.1, 0, 1.4, 1.2, 1.4, 0;
  const auto t = relative_error_stats(validate_matrix(testutil::rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})), four);
  CHECK(t.median_rel == doctest::Approx(0.2));
  CHECK_THROWS_AS(relative_error_stats(d, RowMatrix::Zero(2, 2)), DataError);
}

TEST_CASE("pq bound check: identity has no violations") {
  std::mt19937_64 rng(5);
  const auto d = testutil::random_hollow(20, rng);
  const auto emb = embed_pq(decompose(center_gram(d)));
  const auto chk = validate_pq_bound(d, emb, d.entries(), 0.5, true);
  CHECK(chk.violation_rate == 0.0);
  CHECK(chk.violations == 0);
  CHECK(chk.checked + chk.infinite_pairs == 190);
  CHECK(chk.records.size() == chk.checked);
  for (const auto& r : chk.records) {
    CHECK(r.lower <= r.d);
    CHECK(r.upper >= r.d);
    CHECK(r.factor >= 1.0);
  }
}

TEST_CASE("pq bound check flags a pair outside its band") {
  const auto d = testutil::three_point();
  const auto emb = embed_pq(decompose(center_gram(d)));
  RowMatrix dhat = d.entries();
  dhat(1, 2) = dhat(2, 1) = 5 * 1.6;
  const auto chk = validate_pq_bound(d, emb, dhat, 0.5, true);
  CHECK(chk.violations == 1);
  CHECK(chk.violation_rate == doctest::Approx(1.0 / 3));
  // Pair (0,1) has C = 1.5 so the band is 1 +- 0.75.
  CHECK(chk.records[0].lower == doctest::Approx(0.25));
  CHECK(chk.records[0].upper == doctest::Approx(1.75));
}

TEST_CASE("power residual check") {
  const auto d = testutil::three_point();
  const auto same = validate_power_residual(d, 0.3, d.entries(), 0.5);
  CHECK(same.max_residual == 0.0);
  CHECK(same.bound == doctest::Approx(4 * 0.5 * 0.09));
  CHECK(same.fraction_within == 1.0);

  RowMatrix dhat = d.entries();
  dhat(0, 1) = dhat(1, 0) = 1.0 + 0.5 + 0.1;  // 0.1 past the band
  dhat(1, 2) = dhat(2, 1) = 5.0 - 2.5 - 0.5;  // 0.5 past the band
  const auto chk = validate_power_residual(d, 0.3, dhat, 0.5, true);
  CHECK(chk.max_residual == doctest::Approx(0.5));
  CHECK(chk.fraction_within == doctest::Approx(2.0 / 3));
  CHECK(chk.records.size() == 3);
  CHECK(chk.records[0].factor == doctest::Approx(0.1));
}

TEST_CASE("power residual check with r = 0 is the classical band") {
  std::mt19937_64 rng(7);
  const auto x = testutil::gaussian_points(120, 40, rng);
  const auto d = validate_matrix(testutil::squared_distances(x));
  PipelineOptions opts;
  opts.method = Method::jl_power;
  opts.config.seed = 3;
  const auto run = run_projection(d, opts);
  REQUIRE(run.report.radius == 0.0);
  const auto& chk = *run.report.power_check;
  std::size_t in_band = 0;
  std::size_t total = 0;
  for (int i = 0; i < 120; ++i) {
    for (int j = i + 1; j < 120; ++j) {
      in_band += std::abs(run.dhat(i, j) - d(i, j)) <= 0.5 * d(i, j) ? 1 : 0;
      ++total;
    }
  }
  CHECK(chk.bound == 0.0);
  CHECK(chk.fraction_within == doctest::Approx(static_cast<double>(in_band) / static_cast<double>(total)));
}

TEST_CASE("pq violation rate falls as the dimension constant doubles") {
  SimplexSpec spec;
  spec.n = 200;
  spec.seed = 11;
  const auto d = gen_simplex(spec);
  const auto dec = decompose(center_gram(d));
  double low = 0.0;
  double high = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    PipelineOptions opts;
    opts.method = Method::jl_pq;
    opts.config.seed = s;
    opts.config.dim_constant = 0.5;
    low += run_projection(d, dec, opts).report.pq_check->violation_rate;
    opts.config.dim_constant = 1.0;
    high += run_projection(d, dec, opts).report.pq_check->violation_rate;
  }
  CHECK(high <= low);
}

TEST_CASE("Euclidean input: all three methods agree") {
  std::mt19937_64 rng(13);
  const auto x = testutil::gaussian_points(150, 30, rng);
  const auto d = validate_matrix(testutil::squared_distances(x));
  const auto dec = decompose(center_gram(d));
  REQUIRE(dec.q == 0);
  double max_rel[3];
  int k = 0;
  for (Method m : {Method::jl, Method::jl_pq, Method::jl_power}) {
    PipelineOptions opts;
    opts.method = m;
    opts.config.seed = 17;
    const auto run = run_projection(d, dec, opts);
    CHECK(run.report.m == target_dim(150, opts.config));
    CHECK(run.report.q == 0);
    CHECK(run.report.radius == 0.0);
    max_rel[k++] = run.report.stats.max_rel;
  }
  const double lo = std::min({max_rel[0], max_rel[1], max_rel[2]});
  const double hi = std::max({max_rel[0], max_rel[1], max_rel[2]});
  CHECK(hi <= 2 * lo);
}

TEST_CASE("pipeline rejects a radius override outside jl-power") {
  const auto d = testutil::three_point();
  PipelineOptions opts;
  opts.method = Method::jl_pq;
  opts.radius_override = 1.0;
  CHECK_THROWS_AS(run_projection(d, opts), UsageError);
}

TEST_CASE("pipeline identity debug scores D itself") {
  std::mt19937_64 rng(19);
  const auto d = testutil::random_hollow(15, rng);
  PipelineOptions opts;
  opts.method = Method::jl_pq;
  opts.identity_debug = true;
  const auto run = run_projection(d, opts);
  CHECK(run.report.pq_check->violations == 0);
  CHECK(run.report.stats.max_rel == 0.0);
}

TEST_CASE("power residual fraction on the three-point example tracks the chi-square oracle") {
  const auto d = testutil::three_point();
  const auto dec = decompose(center_gram(d));
  auto mean_fraction = [&](double c) {
    double total = 0.0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
      PipelineOptions opts;
      opts.method = Method::jl_power;
      opts.config.seed = s;
      opts.config.dim_constant = c;
      total += run_projection(d, dec, opts).report.power_check->fraction_within;
    }
    return total / 1000.0;
  };
  for (double c : {2.0, 8.0}) {
    ProjectionConfig probe;
    probe.dim_constant = c;
    const int m = static_cast<int>(target_dim(3, probe));
    const double p = 1.0 - oracle::jl_miss_probability(m, 0.5);
    CAPTURE(m);
    CHECK(std::abs(mean_fraction(c) - p) <= 4 * std::sqrt(p * (1 - p) / 1000.0));
  }
  CHECK(mean_fraction(8.0) >= 0.95);
}
