// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <string>

#include "exch/error.hpp"
#include "exch/verify.hpp"

namespace exch {

double oracle_polya_seq_pmf(const UrnParams& params, std::span<const std::uint32_t> seq) {
  if (seq.size() > 12) fail(Errc::OutOfRange, "polya oracle: sequences longer than 12 are not supported");
  std::vector<double> seen(params.k(), 0.0);
  double p = 1.0;
  for (std::size_t t = 0; t < seq.size(); ++t) {
    const std::uint32_t label = seq[t];
    if (label >= params.k()) fail(Errc::OutOfRange, "polya oracle: label out of range");
    p *= (params.alpha(label) + seen[label]) / (params.total() + static_cast<double>(t));
    seen[label] += 1.0;
  }
  return p;
}

double oracle_crp_partition_pmf(const CrpParams& params, const Partition& pi) {
  if (pi.n() > 10) fail(Errc::OutOfRange, "crp oracle: partitions of more than 10 elements are not supported");
  std::vector<double> tables;
  double p = 1.0;
  for (std::size_t i = 0; i < pi.n(); ++i) {
    const std::uint32_t b = pi.block_of(i);
    if (i > 0) {
      const double denom = static_cast<double>(i) + params.theta();
      if (b < tables.size()) {
        p *= (tables[b] - params.alpha()) / denom;
      } else {
        p *= (static_cast<double>(tables.size()) * params.alpha() + params.theta()) / denom;
      }
    }
    if (b == tables.size()) tables.push_back(0.0);
    tables[b] += 1.0;
  }
  return p;
}

namespace {

// Every composition of n into k nonnegative parts.
void for_each_count_vector(std::size_t k, std::size_t n, const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
  std::vector<std::uint32_t> counts(k, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == k) {
      counts[i] = static_cast<std::uint32_t>(left);
      fn(counts);
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[i] = static_cast<std::uint32_t>(c);
      rec(i + 1, left - c);
    }
  };
  rec(0, n);
}

}  // namespace

TestReport check_exchangeability_exact(const UrnParams& params, std::size_t n, const SeqLogPmf& pmf) {
  if (n > 6) fail(Errc::OutOfRange, "exchangeability check: n must be at most 6");
  const SeqLogPmf law = pmf ? pmf : SeqLogPmf([](const UrnParams& p, std::span<const std::uint32_t> s) {
    return polya_seq_log_pmf(p, s);
  });

  double worst = 0.0;
  std::size_t orbits = 0;
  // Each orbit under permutation is the set of arrangements of one count
  // vector; compare every arrangement with the sorted representative.
  for_each_count_vector(params.k(), n, [&](const std::vector<std::uint32_t>& counts) {
    ++orbits;
    LabelSequence seq;
    for (std::uint32_t label = 0; label < counts.size(); ++label) seq.insert(seq.end(), counts[label], label);
    const SignedLogValue ref = law(params, seq);
    do {
      const SignedLogValue v = law(params, seq);
      const double diff = v.sign() != ref.sign() ? HUGE_VAL : std::fabs(v.logmag() - ref.logmag());
      worst = std::max(worst, diff);
    } while (std::next_permutation(seq.begin(), seq.end()));
  });

  TestReport r;
  r.name = "exchangeability";
  r.statistic = worst;
  r.threshold = 1e-12;
  r.passed = worst <= r.threshold;
  r.details = "k=" + std::to_string(params.k()) + " n=" + std::to_string(n) + " orbits=" + std::to_string(orbits);
  return r;
}

double chi_square_stat(std::span<const std::uint64_t> observed, std::span<const double> expected_probs,
                       std::uint64_t n) {
  if (observed.size() != expected_probs.size()) fail(Errc::DimensionMismatch, "chi-square: bin counts differ");
  if (observed.empty()) fail(Errc::InvalidParameter, "chi-square: no bins");
  double prob_sum = 0.0;
  for (double e : expected_probs) prob_sum += e;
  if (std::fabs(prob_sum - 1.0) > 1e-9) fail(Errc::InvalidParameter, "chi-square: expected probabilities do not sum to 1");

  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = static_cast<double>(n) * expected_probs[i];
    if (expected < 5.0) {
      fail(Errc::InvalidParameter, "chi-square: expected count " + std::to_string(expected) + " below 5 in bin " +
                                       std::to_string(i) + "; merge bins first");
    }
    const double d = static_cast<double>(observed[i]) - expected;
    stat += d * d / expected;
  }
  return stat;
}

Bins merge_small_bins(std::span<const std::uint64_t> observed, std::span<const double> expected_probs, std::uint64_t n,
                      double min_expected) {
  if (observed.size() != expected_probs.size()) fail(Errc::DimensionMismatch, "merge bins: bin counts differ");
  Bins out;
  std::uint64_t tail_obs = 0;
  double tail_prob = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (static_cast<double>(n) * expected_probs[i] >= min_expected) {
      out.observed.push_back(observed[i]);
      out.expected_probs.push_back(expected_probs[i]);
    } else {
      tail_obs += observed[i];
      tail_prob += expected_probs[i];
    }
  }
  if (tail_prob > 0.0 || tail_obs > 0) {
    if (static_cast<double>(n) * tail_prob >= min_expected || out.observed.empty()) {
      out.observed.push_back(tail_obs);
      out.expected_probs.push_back(tail_prob);
    } else {
      // Tail still too thin: fold it into the smallest remaining bin.
      auto smallest = std::min_element(out.expected_probs.begin(), out.expected_probs.end()) - out.expected_probs.begin();
      out.observed[smallest] += tail_obs;
      out.expected_probs[smallest] += tail_prob;
    }
  }
  return out;
}

double chi_square_critical(std::size_t dof, double significance) {
  if (dof == 0) fail(Errc::InvalidParameter, "chi-square critical: zero degrees of freedom");
  const boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::quantile(boost::math::complement(dist, significance));
}

double ks_stat(std::span<const double> sorted_samples, const std::function<double(double)>& cdf) {
  if (sorted_samples.empty()) fail(Errc::InvalidParameter, "ks: no samples");
  const auto n = static_cast<double>(sorted_samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    const double f = cdf(sorted_samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_two_sample_stat(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) fail(Errc::InvalidParameter, "ks: no samples");
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical(std::size_t n, double significance) {
  if (n == 0) fail(Errc::InvalidParameter, "ks critical: n must be positive");
  return std::sqrt(-0.5 * std::log(significance / 2.0)) / std::sqrt(static_cast<double>(n));
}

double ks_two_sample_critical(std::size_t n, std::size_t m, double significance) {
  if (n == 0 || m == 0) fail(Errc::InvalidParameter, "ks critical: sample sizes must be positive");
  const auto nd = static_cast<double>(n);
  const auto md = static_cast<double>(m);
  return std::sqrt(-0.5 * std::log(significance / 2.0)) * std::sqrt((nd + md) / (nd * md));
}

double beta_cdf(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

}  // namespace exch
