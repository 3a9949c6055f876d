// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "exch/crp.hpp"
#include "exch/random.hpp"

namespace exch {

// Block weights in order of appearance, truncated, with the untracked mass
// kept as `residual`.
struct WeightSequence {
  std::vector<double> weights;
  double residual = 0.0;
  friend bool operator==(const WeightSequence&, const WeightSequence&) = default;
};

// The same weights sorted non-increasing.
struct RankedWeights {
  std::vector<double> weights;
  double residual = 0.0;
  friend bool operator==(const RankedWeights&, const RankedWeights&) = default;
};

// |B_i| / n with blocks ordered by least element.
WeightSequence empirical_block_weights(const Partition& pi);

// Stick-breaking with W_j ~ Beta(1 - alpha, theta + j alpha), j = 1..depth.
// Requires infinite-block parameters with alpha < 1.
WeightSequence gem_sample(const CrpParams& params, std::size_t depth, RandomSource& rng);

// Deterministic stick-breaking from given stick fractions in [0, 1].
WeightSequence gem_from_sticks(std::span<const double> sticks);

RankedWeights rank_weights(const WeightSequence& w);

// The formal-set count
//   C(-theta/alpha, k) prod C(alpha, n_i) C(-theta - k alpha, n - sum n_i) / C(-theta, n),
// which equals E[# ordered k-tuples of distinct blocks with sizes n_1..n_k] / k!
// for the partition of the first n customers. alpha == 0 uses its exact limit.
double block_count_prob(const CrpParams& params, std::uint64_t n, std::span<const std::uint64_t> sizes);

// log c_{k,alpha,theta}; alpha == 0 gives k log theta and theta == 0 its limit.
double log_correlation_constant(const CrpParams& params, std::size_t k);

// k-point correlation density of the ranked block weights at xs in the open
// simplex interior. Requires infinite-block parameters with alpha < 1.
double rho_k(const CrpParams& params, std::span<const double> xs);
double log_rho_k(const CrpParams& params, std::span<const double> xs);

using CorrelationFn1 = std::function<double(double)>;
using CorrelationFn2 = std::function<double(double, double)>;

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Replicas of the ranked empirical CRP block weights at size n; returns the
// mean and standard error of sum_i f(S_i) or sum_{i != j} f(S_i, S_j). Weights
// below 1e-12 are dropped. Each replica draws from its own stream seeded from
// `rng`. Requires reps >= 100.
McEstimate correlation_mc_estimate(const CrpParams& params, const CorrelationFn1& f, std::size_t n,
                                   std::size_t reps, RandomSource& rng);
McEstimate correlation_mc_estimate(const CrpParams& params, const CorrelationFn2& f, std::size_t n,
                                   std::size_t reps, RandomSource& rng);

}  // namespace exch
