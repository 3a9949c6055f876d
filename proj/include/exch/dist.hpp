// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "exch/random.hpp"

namespace exch {

// A point of the probability simplex: nonnegative entries summing to one.
class SimplexVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  // Throws InvalidParameter unless the weights are nonnegative, finite and
  // sum to one within kSumTolerance per thousand entries.
  explicit SimplexVector(std::vector<double> weights);

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& weights() const noexcept { return w_; }
  std::span<const double> span() const noexcept { return w_; }

  friend bool operator==(const SimplexVector&, const SimplexVector&) = default;

 private:
  std::vector<double> w_;
};

double sample_gamma(double shape, RandomSource& rng);

// log of a Gamma(shape, 1) draw; stays finite for shapes so small that the
// draw itself underflows.
double sample_log_gamma(double shape, RandomSource& rng);

// Z_a / (Z_a + Z_b) from two independent Gamma draws.
double sample_beta(double a, double b, RandomSource& rng);

SimplexVector sample_dirichlet_gamma(std::span<const double> alphas, RandomSource& rng);

// W_i ~ Beta(alpha_i, alpha_{i+1} + ... + alpha_k), X_i = W_i prod_{j<i}(1 - W_j),
// and the last coordinate takes the remaining stick.
SimplexVector sample_dirichlet_stick(std::span<const double> alphas, RandomSource& rng);

// Inverse CDF over the cumulative sum; mass lost to rounding at the top goes
// to the last index.
std::size_t sample_categorical(const SimplexVector& weights, RandomSource& rng);

}  // namespace exch
