// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "exch/dist.hpp"
#include "exch/numkern.hpp"
#include "exch/random.hpp"

namespace exch {

// Labels are 0-based everywhere in the C++ API. The C API and the CLI use the
// 1-based labels 1..k and convert at the boundary.

// Initial urn weights alpha_1..alpha_k, all positive and finite.
class UrnParams {
 public:
  explicit UrnParams(std::vector<double> alphas);

  std::size_t k() const noexcept { return alphas_.size(); }
  double alpha(std::size_t i) const { return alphas_[i]; }
  double total() const noexcept { return total_; }
  std::span<const double> alphas() const noexcept { return alphas_; }

 private:
  std::vector<double> alphas_;
  double total_ = 0.0;
};

using LabelSequence = std::vector<std::uint32_t>;
using CountVector = std::vector<std::uint64_t>;

// Label counts n_1..n_k of a sequence. Throws OutOfRange on a label >= k.
CountVector count_labels(std::size_t k, std::span<const std::uint32_t> seq);

// Conditional law of the next label: (alpha_i + n_i) / (sum alpha + n).
SimplexVector polya_next_probs(const UrnParams& params, std::span<const std::uint64_t> counts);

LabelSequence polya_sample(const UrnParams& params, std::size_t n, RandomSource& rng);

// Counts of an n-step urn run without materialising the sequence.
CountVector polya_sample_counts(const UrnParams& params, std::size_t n, RandomSource& rng);

// prod_i alpha_i^(n_i rising) / (sum alpha)^(n rising). Depends on the
// sequence only through its counts.
SignedLogValue polya_seq_log_pmf(const UrnParams& params, std::span<const std::uint32_t> seq);

// Multinomial coefficient times the sequence law.
SignedLogValue polya_count_log_pmf(const UrnParams& params, std::span<const std::uint64_t> counts);

// Dirichlet log density with respect to Lebesgue measure on the first k-1
// coordinates. Returns +inf where some x_i = 0 with alpha_i < 1 and -inf where
// x_i = 0 with alpha_i > 1. Throws Domain for x off the simplex.
double dirichlet_log_density(std::span<const double> alphas, std::span<const double> x);

// Sums coordinates over each block. `blocks` must partition 0..k-1.
SimplexVector aggregate_simplex(const SimplexVector& x, const std::vector<std::vector<std::size_t>>& blocks);

// x_I / sum_{i in I} x_i, in the order of `indices`.
SimplexVector normalize_subvector(const SimplexVector& x, std::span<const std::size_t> indices);

}  // namespace exch
