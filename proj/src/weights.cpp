// SPDX-License-Identifier: Apache-2.0

#include "exch/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "exch/dist.hpp"
#include "exch/error.hpp"
#include "exch/numkern.hpp"

namespace exch {
namespace {

constexpr double kDropBelow = 1e-12;

void require_stick_params(const CrpParams& params, const char* who) {
  if (params.finite_blocks()) fail(Errc::InvalidParameter, std::string(who) + ": needs infinite-block parameters");
  if (!(params.alpha() < 1.0)) fail(Errc::InvalidParameter, std::string(who) + ": alpha = 1 is degenerate");
}

}  // namespace

WeightSequence empirical_block_weights(const Partition& pi) {
  if (pi.n() == 0) fail(Errc::InvalidParameter, "block weights: empty partition");
  WeightSequence w;
  const auto n = static_cast<double>(pi.n());
  w.weights.reserve(pi.num_blocks());
  for (auto s : pi.block_sizes()) w.weights.push_back(static_cast<double>(s) / n);
  return w;
}

WeightSequence gem_from_sticks(std::span<const double> sticks) {
  WeightSequence w;
  w.weights.reserve(sticks.size());
  double remaining = 1.0;
  for (double s : sticks) {
    if (!(s >= 0.0 && s <= 1.0)) fail(Errc::InvalidParameter, "stick fraction outside [0, 1]");
    w.weights.push_back(s * remaining);
    remaining *= 1.0 - s;
  }
  w.residual = remaining;
  return w;
}

WeightSequence gem_sample(const CrpParams& params, std::size_t depth, RandomSource& rng) {
  require_stick_params(params, "gem");
  if (depth == 0) fail(Errc::InvalidParameter, "gem: depth must be positive");
  std::vector<double> sticks(depth);
  for (std::size_t j = 0; j < depth; ++j) {
    sticks[j] = sample_beta(1.0 - params.alpha(), params.theta() + static_cast<double>(j + 1) * params.alpha(), rng);
  }
  return gem_from_sticks(sticks);
}

RankedWeights rank_weights(const WeightSequence& w) {
  RankedWeights r{w.weights, w.residual};
  std::sort(r.weights.begin(), r.weights.end(), std::greater<>());
  return r;
}

double block_count_prob(const CrpParams& params, std::uint64_t n, std::span<const std::uint64_t> sizes) {
  if (n == 0) fail(Errc::InvalidParameter, "block count: n must be positive");
  std::uint64_t used = 0;
  for (auto s : sizes) {
    if (s == 0) fail(Errc::InvalidParameter, "block count: sizes must be positive");
    used += s;
  }
  if (used > n) fail(Errc::InvalidParameter, "block count: sizes sum past n");

  const double alpha = params.alpha();
  const double theta = params.theta();
  const std::uint64_t k = sizes.size();
  const auto kd = static_cast<double>(k);

  if (alpha == 0.0) {
    // alpha -> 0: C(-theta/alpha, k) prod C(alpha, n_i) -> (-1)^s theta^k / (k! prod n_i)
    double logmag = kd * std::log(theta) - log_factorial(k);
    for (auto s : sizes) logmag -= std::log(static_cast<double>(s));
    const SignedLogValue lead((used % 2 == 0) ? 1 : -1, logmag);
    return (lead * gen_binom(-theta, n - used) / gen_binom(-theta, n)).to_real();
  }

  SignedLogValue p = SignedLogValue::one();
  for (auto s : sizes) p *= gen_binom(alpha, s);
  p *= gen_binom(-theta - kd * alpha, n - used);
  if (theta == 0.0 && k > 0) {
    // theta -> 0: C(-theta/alpha, k) / C(-theta, n) -> (-1)^(k+n) n / (alpha k)
    const SignedLogValue lead(((k + n) % 2 == 0) ? 1 : -1, std::log(static_cast<double>(n) / (alpha * kd)));
    return (lead * p).to_real();
  }
  p *= gen_binom(-params.theta_over_alpha(), k);
  return (p / gen_binom(-theta, n)).to_real();
}

double log_correlation_constant(const CrpParams& params, std::size_t k) {
  require_stick_params(params, "correlation constant");
  const double alpha = params.alpha();
  const double theta = params.theta();
  const auto kd = static_cast<double>(k);
  if (alpha == 0.0) return kd * std::log(theta);

  const double tail = kd * std::log(alpha) - kd * std::lgamma(1.0 - alpha);
  if (theta == 0.0) {
    // Gamma(theta) / Gamma(theta/alpha) -> 1 / alpha
    return std::lgamma(kd) + (kd - 1.0) * std::log(alpha) - std::lgamma(kd * alpha) - kd * std::lgamma(1.0 - alpha);
  }
  // Gamma(theta/alpha + k) / Gamma(theta/alpha) is a rising factorial.
  const SignedLogValue shift = rising(theta / alpha, k);
  SignedLogValue gamma_theta(1, std::lgamma(theta));
  if (theta < 0.0) gamma_theta = SignedLogValue(-1, std::lgamma(theta + 1.0) - std::log(-theta));
  const SignedLogValue c = shift * gamma_theta / SignedLogValue(1, std::lgamma(theta + kd * alpha));
  if (c.sign() <= 0) fail(Errc::Domain, "correlation constant is not positive");
  return c.logmag() + tail;
}

double log_rho_k(const CrpParams& params, std::span<const double> xs) {
  require_stick_params(params, "rho_k");
  if (xs.empty()) fail(Errc::Domain, "rho_k: need at least one point");
  double sum = 0.0;
  double log_points = 0.0;
  for (double x : xs) {
    if (!(x > 0.0)) fail(Errc::Domain, "rho_k: points must be positive");
    sum += x;
    log_points += std::log(x);
  }
  if (!(sum < 1.0)) fail(Errc::Domain, "rho_k: points must sum below 1");
  const auto kd = static_cast<double>(xs.size());
  return log_correlation_constant(params, xs.size()) + (-params.alpha() - 1.0) * log_points +
         (kd * params.alpha() + params.theta() - 1.0) * std::log1p(-sum);
}

double rho_k(const CrpParams& params, std::span<const double> xs) { return std::exp(log_rho_k(params, xs)); }

namespace {

template <class Statistic>
McEstimate replicate(const CrpParams& params, std::size_t n, std::size_t reps, RandomSource& rng,
                     Statistic&& statistic) {
  if (reps < 100) fail(Errc::InvalidParameter, "correlation estimate: reps must be at least 100");
  if (n == 0) fail(Errc::InvalidParameter, "correlation estimate: n must be positive");
  double mean = 0.0;
  double m2 = 0.0;
  std::vector<double> kept;
  for (std::size_t r = 0; r < reps; ++r) {
    RandomSource child(rng.next_u64());
    const RankedWeights ranked = rank_weights(empirical_block_weights(crp_sample(params, n, child)));
    kept.clear();
    for (double w : ranked.weights) {
      if (w >= kDropBelow) kept.push_back(w);
    }
    const double value = statistic(kept);
    const double delta = value - mean;
    mean += delta / static_cast<double>(r + 1);
    m2 += delta * (value - mean);
  }
  const double variance = m2 / static_cast<double>(reps - 1);
  return {mean, std::sqrt(variance / static_cast<double>(reps))};
}

}  // namespace

McEstimate correlation_mc_estimate(const CrpParams& params, const CorrelationFn1& f, std::size_t n,
                                   std::size_t reps, RandomSource& rng) {
  return replicate(params, n, reps, rng, [&](const std::vector<double>& s) {
    double total = 0.0;
    for (double x : s) total += f(x);
    return total;
  });
}

McEstimate correlation_mc_estimate(const CrpParams& params, const CorrelationFn2& f, std::size_t n,
                                   std::size_t reps, RandomSource& rng) {
  return replicate(params, n, reps, rng, [&](const std::vector<double>& s) {
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (i != j) total += f(s[i], s[j]);
      }
    }
    return total;
  });
}

}  // namespace exch
