// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "exch/error.hpp"
#include "exch/weights.hpp"

using exch::CrpParams;
using exch::Partition;

namespace {

double block_count(double alpha, double theta, std::uint64_t n, std::vector<std::uint64_t> sizes) {
  return exch::block_count_prob(CrpParams::validate(alpha, theta), n, sizes);
}

}  // namespace

TEST_CASE("empirical block weights") {
  const auto w = exch::empirical_block_weights(Partition::from_blocks({{0, 2}, {1}}));
  CHECK(w.weights.size() == 2);
  CHECK(w.weights[0] == doctest::Approx(2.0 / 3.0));
  CHECK(w.weights[1] == doctest::Approx(1.0 / 3.0));
  CHECK(w.residual == 0.0);
  const auto whole = exch::empirical_block_weights(Partition::from_blocks({{0, 1, 2, 3}}));
  CHECK(whole.weights == std::vector<double>{1.0});
}

TEST_CASE("stick breaking") {
  const std::vector<double> sticks{0.5, 0.5, 0.5};
  const auto w = exch::gem_from_sticks(sticks);
  CHECK(w.weights == std::vector<double>{0.5, 0.25, 0.125});
  CHECK(w.residual == 0.125);

  exch::RandomSource rng(31);
  const auto p = CrpParams::validate(0.5, 0.5);
  const std::size_t n = 100000;
  double sum = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto g = exch::gem_sample(p, 20, rng);
    double total = g.residual;
    for (double v : g.weights) total += v;
    if (i < 100) CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    sum += g.weights[0];
    sq += g.weights[0] * g.weights[0];
  }
  const double mean = sum / n;
  const double se = std::sqrt((sq / n - mean * mean) / n);
  CHECK(std::fabs(mean - 1.0 / 3.0) < 3.0 * se);

  CHECK_THROWS_AS(exch::gem_sample(CrpParams::validate(-1.0, 2.0), 5, rng), exch::Error);
  CHECK_THROWS_AS(exch::gem_sample(CrpParams::validate(1.0, 1.0), 5, rng), exch::Error);
  CHECK_THROWS_AS(exch::gem_sample(p, 0, rng), exch::Error);
}

TEST_CASE("ranking") {
  const auto r = exch::rank_weights({{0.2, 0.5, 0.3}, 0.0});
  CHECK(r.weights == std::vector<double>{0.5, 0.3, 0.2});
  const auto again = exch::rank_weights({r.weights, r.residual});
  CHECK(again == r);
}

TEST_CASE("block count probabilities") {
  CHECK(block_count(0.5, 0.5, 1, {1}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(block_count(0.5, 0.5, 2, {2}) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(block_count(0.5, 0.5, 2, {1, 1}) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  // Values cross-checked by exact rational enumeration.
  CHECK(block_count(0.5, 0.5, 3, {1, 2}) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(block_count(0.5, 0.5, 4, {1, 1}) == doctest::Approx(12.0 / 7.0).epsilon(1e-14));
  CHECK(block_count(0.5, 0.5, 5, {2, 1, 1}) == doctest::Approx(16.0 / 63.0).epsilon(1e-14));
  // The single-block count equals the EP probability of the one-block partition.
  CHECK(block_count(0.0, 1.0, 3, {3}) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(block_count(0.4, 0.0, 2, {2}) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK_THROWS_AS(block_count(0.5, 0.5, 2, {2, 1}), exch::Error);
  CHECK_THROWS_AS(block_count(0.5, 0.5, 2, {0}), exch::Error);
}

TEST_CASE("correlation densities") {
  const std::vector<double> half{0.5};
  CHECK(exch::rho_k(CrpParams::validate(0.0, 1.0), half) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::exp(exch::log_correlation_constant(CrpParams::validate(0.5, 0.5), 1)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::exp(exch::log_correlation_constant(CrpParams::validate(0.5, 0.5), 2)) ==
        doctest::Approx(0.3183098861837907).epsilon(1e-13));
  CHECK(std::exp(exch::log_correlation_constant(CrpParams::validate(0.0, 2.5), 3)) == doctest::Approx(15.625).epsilon(1e-14));

  const std::vector<double> xy{0.2, 0.3};
  const std::vector<double> yx{0.3, 0.2};
  const auto p = CrpParams::validate(0.3, 1.1);
  CHECK(exch::rho_k(p, xy) == doctest::Approx(exch::rho_k(p, yx)).epsilon(1e-14));
  CHECK_THROWS_AS(exch::rho_k(p, std::vector<double>{0.6, 0.5}), exch::Error);
  CHECK_THROWS_AS(exch::rho_k(p, std::vector<double>{}), exch::Error);
}

TEST_CASE("monte carlo correlation estimates") {
  exch::RandomSource rng(37);
  const auto p = CrpParams::validate(0.5, 0.5);
  const auto one = exch::correlation_mc_estimate(p, exch::CorrelationFn1([](double x) { return x; }), 200, 100, rng);
  CHECK(one.estimate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.std_error < 1e-12);
  const auto sq = exch::correlation_mc_estimate(CrpParams::validate(0.0, 1.0),
                                                exch::CorrelationFn1([](double x) { return x * x; }), 2000, 2000, rng);
  CHECK(std::fabs(sq.estimate - 0.5) < 3.0 * sq.std_error);
  const auto xy = exch::correlation_mc_estimate(CrpParams::validate(0.0, 1.0),
                                                exch::CorrelationFn2([](double x, double y) { return x * y; }), 2000, 2000,
                                                rng);
  CHECK(std::fabs(xy.estimate - 0.5) < 3.0 * xy.std_error);
  CHECK_THROWS_AS(exch::correlation_mc_estimate(p, exch::CorrelationFn1([](double x) { return x; }), 10, 99, rng),
                  exch::Error);
}
