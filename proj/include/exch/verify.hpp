// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exch/crp.hpp"
#include "exch/numkern.hpp"
#include "exch/polya.hpp"

namespace exch {

// Outcome of one check. For ordinary checks `passed` means the statistic is
// within the threshold; for negative controls (`control == true`) the
// hypothesis is deliberately wrong and `passed` means it was rejected.
struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;
  bool control = false;
  std::uint64_t seed = 0;
  std::string details;

  friend bool operator==(const TestReport&, const TestReport&) = default;
};

// Significance level shared by every statistical acceptance check.
inline constexpr double kSignificance = 1e-3;

// Product of the sequential conditionals along the sequence. n <= 12.
double oracle_polya_seq_pmf(const UrnParams& params, std::span<const std::uint32_t> seq);

// Product of the seating probabilities along the unique seating history of pi.
// n <= 10.
double oracle_crp_partition_pmf(const CrpParams& params, const Partition& pi);

using SeqLogPmf = std::function<SignedLogValue(const UrnParams&, std::span<const std::uint32_t>)>;

// Max log-discrepancy of `pmf` across all rearrangements of every sequence of
// length n; the statistic is compared against 1e-12. `pmf` defaults to
// polya_seq_log_pmf and exists so tests can inject a corrupted law.
TestReport check_exchangeability_exact(const UrnParams& params, std::size_t n, const SeqLogPmf& pmf = {});

// Pearson statistic sum (O_i - n E_i)^2 / (n E_i). Every expected count must be
// at least 5; use merge_small_bins first.
double chi_square_stat(std::span<const std::uint64_t> observed, std::span<const double> expected_probs,
                       std::uint64_t n);

struct Bins {
  std::vector<std::uint64_t> observed;
  std::vector<double> expected_probs;
};

// Folds cells with expected count below `min_expected` into a single tail bin.
Bins merge_small_bins(std::span<const std::uint64_t> observed, std::span<const double> expected_probs,
                      std::uint64_t n, double min_expected = 5.0);

// Upper critical value of chi-square with `dof` degrees of freedom.
double chi_square_critical(std::size_t dof, double significance = kSignificance);

// sup |F_N - F| for sorted samples.
double ks_stat(std::span<const double> sorted_samples, const std::function<double(double)>& cdf);

// Two-sample sup |F_N - G_M| for sorted samples.
double ks_two_sample_stat(std::span<const double> a_sorted, std::span<const double> b_sorted);

// Asymptotic Kolmogorov critical values.
double ks_critical(std::size_t n, double significance = kSignificance);
double ks_two_sample_critical(std::size_t n, std::size_t m, double significance = kSignificance);

double beta_cdf(double a, double b, double x);

// Named groups of invariant checks: polya-exact, crp-exact, limits, dirichlet,
// gem, correlation. Deterministic given the seed; each check draws from its
// own stream derive_seed(seed, check index). Throws UnknownSuite.
std::vector<TestReport> run_suite(std::string_view name, std::uint64_t seed);

const std::vector<std::string>& suite_names();

}  // namespace exch
