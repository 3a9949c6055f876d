// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "exch/error.hpp"
#include "exch/verify.hpp"

using exch::UrnParams;

TEST_CASE("sequential oracles") {
  const UrnParams p({1.0, 1.0});
  CHECK(exch::oracle_polya_seq_pmf(p, std::vector<std::uint32_t>{0, 0}) == doctest::Approx(1.0 / 3.0));
  CHECK(exch::oracle_polya_seq_pmf(p, std::vector<std::uint32_t>{1, 0}) == doctest::Approx(1.0 / 6.0));
  CHECK(exch::oracle_polya_seq_pmf(p, std::vector<std::uint32_t>{}) == 1.0);
  CHECK_THROWS_AS(exch::oracle_polya_seq_pmf(p, std::vector<std::uint32_t>(13, 0)), exch::Error);

  const auto half = exch::CrpParams::validate(0.5, 0.5);
  CHECK(exch::oracle_crp_partition_pmf(half, exch::Partition::from_blocks({{0, 1}})) == doctest::Approx(1.0 / 3.0));
  CHECK(exch::oracle_crp_partition_pmf(exch::CrpParams::validate(-1.0, 2.0), exch::Partition::from_blocks({{0, 1, 2}})) ==
        doctest::Approx(0.5));
  CHECK(exch::oracle_crp_partition_pmf(half, exch::Partition::from_blocks({{0}})) == 1.0);
}

TEST_CASE("exact exchangeability check") {
  const auto ok = exch::check_exchangeability_exact(UrnParams({1.0, 2.0, 3.0}), 4);
  CHECK(ok.passed);
  CHECK(ok.statistic < 1e-12);
  CHECK(exch::check_exchangeability_exact(UrnParams({0.5}), 3).passed);

  const exch::SeqLogPmf corrupted = [](const UrnParams& params, std::span<const std::uint32_t> seq) {
    auto v = exch::polya_seq_log_pmf(params, seq);
    if (!seq.empty() && seq[0] == 0) v *= exch::SignedLogValue::from_real(1.01);
    return v;
  };
  CHECK_FALSE(exch::check_exchangeability_exact(UrnParams({1.0, 2.0}), 3, corrupted).passed);
}

TEST_CASE("chi-square statistic") {
  const std::vector<std::uint64_t> obs{50, 30, 20};
  const std::vector<double> probs{0.5, 0.3, 0.2};
  CHECK(exch::chi_square_stat(obs, probs, 100) == doctest::Approx(0.0));
  CHECK(exch::chi_square_stat(std::vector<std::uint64_t>{60, 40}, std::vector<double>{0.5, 0.5}, 100) ==
        doctest::Approx(4.0));
  CHECK_THROWS_AS(exch::chi_square_stat(std::vector<std::uint64_t>{60, 40}, std::vector<double>{1.0, 0.0}, 100),
                  exch::Error);
  CHECK(exch::chi_square_critical(1) == doctest::Approx(10.827566170662733).epsilon(1e-9));

  const auto bins = exch::merge_small_bins(std::vector<std::uint64_t>{70, 20, 4, 3, 3},
                                           std::vector<double>{0.7, 0.2, 0.04, 0.03, 0.03}, 100);
  CHECK(bins.observed == std::vector<std::uint64_t>{70, 20, 10});
  REQUIRE(bins.expected_probs.size() == 3);
  CHECK(bins.expected_probs[2] == doctest::Approx(0.1));
  // A tail that is still too thin is folded into the smallest remaining bin.
  const auto folded = exch::merge_small_bins(std::vector<std::uint64_t>{90, 6, 3, 1},
                                             std::vector<double>{0.9, 0.06, 0.03, 0.01}, 100);
  CHECK(folded.observed == std::vector<std::uint64_t>{90, 10});
  REQUIRE(folded.expected_probs.size() == 2);
  CHECK(folded.expected_probs[1] == doctest::Approx(0.1));
}

TEST_CASE("kolmogorov-smirnov statistics") {
  const auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(exch::ks_stat(std::vector<double>{0.5}, uniform) == doctest::Approx(0.5));
  std::vector<double> quantiles;
  for (int i = 1; i <= 99; ++i) quantiles.push_back(i / 100.0);
  CHECK(exch::ks_stat(quantiles, uniform) < 0.02);
  CHECK(exch::ks_stat(std::vector<double>(10, 0.0), uniform) == doctest::Approx(1.0));
  CHECK_THROWS_AS(exch::ks_stat(std::vector<double>{}, uniform), exch::Error);

  CHECK(exch::ks_two_sample_stat(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}) == 0.0);
  CHECK(exch::ks_two_sample_stat(std::vector<double>{1, 2}, std::vector<double>{3, 4}) == 1.0);
  CHECK(exch::ks_critical(10000) == doctest::Approx(1.9494746 / 100.0).epsilon(1e-6));
  CHECK(exch::ks_two_sample_critical(10000, 10000) == doctest::Approx(1.9494746 * std::sqrt(2.0 / 10000.0)).epsilon(1e-6));
  CHECK(exch::beta_cdf(2.0, 1.0, 0.5) == doctest::Approx(0.25));
}

TEST_CASE("suite runner") {
  CHECK(exch::suite_names().size() == 6);
  for (const char* name : {"polya-exact", "crp-exact"}) {
    const auto reports = exch::run_suite(name, 42);
    CHECK_FALSE(reports.empty());
    for (const auto& r : reports) {
      INFO(r.name);
      CHECK(r.passed);
    }
    CHECK(reports == exch::run_suite(name, 42));
  }
  try {
    exch::run_suite("bogus", 42);
    FAIL("unknown suite accepted");
  } catch (const exch::Error& e) {
    CHECK(e.code() == exch::Errc::UnknownSuite);
  }
}
