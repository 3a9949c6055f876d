// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "exch/crp.hpp"
#include "exch/error.hpp"
#include "exch/verify.hpp"

using exch::CrpParams;
using exch::Partition;

namespace {

double ep(double alpha, double theta, const std::vector<std::vector<std::uint32_t>>& blocks) {
  return exch::ewens_pitman_log_pmf(CrpParams::validate(alpha, theta), Partition::from_blocks(blocks)).to_real();
}

}  // namespace

TEST_CASE("parameter cases") {
  const auto inf = CrpParams::validate(0.5, 0.5);
  CHECK(inf.kind() == exch::CrpCase::InfiniteBlocks);
  CHECK(inf.max_blocks() == 0);
  const auto fin = CrpParams::validate(-1.0, 2.0);
  CHECK(fin.kind() == exch::CrpCase::FiniteBlocks);
  CHECK(fin.max_blocks() == 2);
  CHECK(fin.theta_over_alpha() == -2.0);
  CHECK(CrpParams::validate(0.0, 1.0).kind() == exch::CrpCase::InfiniteBlocks);
  CHECK(CrpParams::validate(1.0, 0.0).kind() == exch::CrpCase::InfiniteBlocks);
  CHECK_THROWS_AS(CrpParams::validate(-1.0, 2.5), exch::Error);
  CHECK_THROWS_AS(CrpParams::validate(0.5, -0.5), exch::Error);
  CHECK_THROWS_AS(CrpParams::validate(1.5, 1.0), exch::Error);
  CHECK_THROWS_AS(CrpParams::validate(0.0, 0.0), exch::Error);
  CHECK_THROWS_AS(CrpParams::validate(NAN, 1.0), exch::Error);
}

TEST_CASE("partitions") {
  const auto pi = Partition::from_blocks({{1}, {0, 2}});
  CHECK(pi.n() == 3);
  CHECK(pi.num_blocks() == 2);
  CHECK(pi.block_sizes() == std::vector<std::uint64_t>{2, 1});
  CHECK(pi.blocks() == std::vector<std::vector<std::uint32_t>>{{0, 2}, {1}});
  const std::vector<std::uint32_t> assignment{5, 9, 5};
  CHECK(Partition::from_assignment(assignment) == pi);
  CHECK_THROWS_AS(Partition::from_blocks({{0}, {0, 1}}), exch::Error);
  CHECK_THROWS_AS(Partition::from_blocks({{0}, {2}}), exch::Error);
  CHECK_THROWS_AS(Partition::from_blocks({{0}, {}}), exch::Error);
}

TEST_CASE("seating probabilities") {
  const auto empty = exch::crp_next_probs(CrpParams::validate(0.5, 0.5), {});
  CHECK(empty.table.empty());
  CHECK(empty.new_table == 1.0);
  const auto one = exch::crp_next_probs(CrpParams::validate(0.5, 0.5), {{1}, 1});
  CHECK(one.table[0] == doctest::Approx(1.0 / 3.0));
  CHECK(one.new_table == doctest::Approx(2.0 / 3.0));
  const auto full = exch::crp_next_probs(CrpParams::validate(-1.0, 2.0), {{1, 1}, 2});
  CHECK(full.new_table == 0.0);
}

TEST_CASE("restaurant sampler") {
  exch::RandomSource rng(29);
  const auto p = CrpParams::validate(0.5, 0.5);
  CHECK(exch::crp_sample(p, 0, rng).n() == 0);
  for (int i = 0; i < 100; ++i) CHECK(exch::crp_sample(p, 1, rng).num_blocks() == 1);
  const std::size_t n = 100000;
  std::size_t together = 0;
  for (std::size_t i = 0; i < n; ++i) together += exch::crp_sample(p, 2, rng).num_blocks() == 1;
  const double q = 1.0 / 3.0;
  CHECK(std::fabs(static_cast<double>(together) / n - q) < 3.0 * std::sqrt(q * (1 - q) / n));

  const auto fin = CrpParams::validate(-0.5, 1.5);
  for (int i = 0; i < 1000; ++i) CHECK(exch::crp_sample(fin, 30, rng).num_blocks() <= 3);
}

TEST_CASE("ewens-pitman law") {
  CHECK(ep(0.5, 0.5, {{0, 1}}) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(ep(0.5, 0.5, {{0}, {1}}) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(ep(-1.0, 2.0, {{0, 1, 2}}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ep(-1.0, 2.0, {{0}, {1}, {2}}) == 0.0);
  CHECK(exch::ewens_pitman_log_pmf(CrpParams::validate(-1.0, 2.0), Partition::from_blocks({{0}, {1}, {2}})).is_zero());
  CHECK(ep(1.0, 0.7, {{0}, {1}, {2}}) == doctest::Approx(1.0));
  CHECK(ep(1.0, 0.7, {{0, 1}, {2}}) == 0.0);
}

TEST_CASE("ewens and theta-zero formulas") {
  CHECK(exch::ewens_log_pmf(1.0, Partition::from_blocks({{0, 1, 2}})).to_real() == doctest::Approx(1.0 / 3.0));
  double total = 0.0;
  for (const auto& pi : exch::enumerate_partitions(3)) total += exch::ewens_log_pmf(1.0, pi).to_real();
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  for (double theta : {0.1, 1.0, 7.0}) CHECK(exch::ewens_log_pmf(theta, Partition::from_blocks({{0}})).to_real() == doctest::Approx(1.0));

  CHECK(exch::theta_zero_log_pmf(0.5, Partition::from_blocks({{0, 1}})).to_real() == doctest::Approx(0.5));
  CHECK(exch::theta_zero_log_pmf(0.5, Partition::from_blocks({{0, 1}})).to_real() +
            exch::theta_zero_log_pmf(0.5, Partition::from_blocks({{0}, {1}})).to_real() ==
        doctest::Approx(1.0));
  CHECK(exch::theta_zero_log_pmf(0.3, Partition::from_blocks({{0}})).to_real() == doctest::Approx(1.0));

  // Boundary parameters route to the dedicated formulas.
  const auto pi = Partition::from_blocks({{0, 3}, {1}, {2, 4}});
  CHECK(ep(0.0, 1.3, pi.blocks()) == doctest::Approx(exch::ewens_log_pmf(1.3, pi).to_real()).epsilon(1e-14));
  CHECK(ep(0.4, 0.0, pi.blocks()) == doctest::Approx(exch::theta_zero_log_pmf(0.4, pi).to_real()).epsilon(1e-14));
  CHECK_THROWS_AS(exch::ewens_log_pmf(0.0, pi), exch::Error);
  CHECK_THROWS_AS(exch::theta_zero_log_pmf(0.0, pi), exch::Error);
}

TEST_CASE("partition enumeration") {
  const std::size_t bell[] = {1, 2, 5, 15, 52, 203, 877, 4140};
  for (std::size_t n = 1; n <= 8; ++n) CHECK(exch::enumerate_partitions(n).size() == bell[n - 1]);
  CHECK(exch::enumerate_partitions(1)[0] == Partition::from_blocks({{0}}));
  const auto all = exch::enumerate_partitions(5);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK_FALSE(all[i] == all[i - 1]);
}

TEST_CASE("law matches the seating oracle and sums to one") {
  for (auto [alpha, theta] : {std::pair{0.5, 0.5}, std::pair{0.2, 3.0}, std::pair{-0.5, 2.0}, std::pair{0.0, 0.8}, std::pair{0.6, 0.0}}) {
    const auto p = CrpParams::validate(alpha, theta);
    double total = 0.0;
    for (const auto& pi : exch::enumerate_partitions(6)) {
      const double v = exch::ewens_pitman_log_pmf(p, pi).to_real();
      CHECK(std::fabs(v - exch::oracle_crp_partition_pmf(p, pi)) < 1e-12);
      total += v;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}
