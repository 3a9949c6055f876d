// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "exch/numkern.hpp"
#include "exch/random.hpp"

namespace exch {

enum class CrpCase {
  FiniteBlocks,    // alpha < 0, theta = -k alpha
  InfiniteBlocks,  // 0 <= alpha <= 1, theta > -alpha
};

class CrpParams {
 public:
  static constexpr double kIntegerTolerance = 1e-9;

  // Throws InvalidParameter when (alpha, theta) is in neither admissible case.
  // In the finite case theta is snapped to exactly -k * alpha.
  static CrpParams validate(double alpha, double theta);

  double alpha() const noexcept { return alpha_; }
  double theta() const noexcept { return theta_; }
  CrpCase kind() const noexcept { return kind_; }
  bool finite_blocks() const noexcept { return kind_ == CrpCase::FiniteBlocks; }
  // Maximum number of blocks in the finite case; 0 otherwise.
  std::uint64_t max_blocks() const noexcept { return k_; }
  // theta / alpha, exactly -k in the finite case. Undefined for alpha == 0.
  double theta_over_alpha() const;

 private:
  CrpParams(double alpha, double theta, CrpCase kind, std::uint64_t k)
      : alpha_(alpha), theta_(theta), kind_(kind), k_(k) {}

  double alpha_;
  double theta_;
  CrpCase kind_;
  std::uint64_t k_;
};

// A set partition of {0, .., n-1} held as its restricted growth string:
// block_of(i) is the index of the block holding i, blocks numbered by their
// least element. This is the canonical form, so == is structural equality.
class Partition {
 public:
  Partition() = default;

  // From a block assignment; relabels blocks into canonical order.
  static Partition from_assignment(std::span<const std::uint32_t> block_of);
  // From explicit 0-based blocks. Throws InvalidParameter unless the blocks
  // are nonempty, disjoint and cover 0..n-1.
  static Partition from_blocks(const std::vector<std::vector<std::uint32_t>>& blocks);

  std::size_t n() const noexcept { return block_of_.size(); }
  std::size_t num_blocks() const noexcept { return sizes_.size(); }
  std::uint32_t block_of(std::size_t i) const { return block_of_[i]; }
  std::span<const std::uint32_t> assignment() const noexcept { return block_of_; }
  // Block sizes in canonical block order.
  const std::vector<std::uint64_t>& block_sizes() const noexcept { return sizes_; }
  // Blocks in canonical order with ascending 0-based elements.
  std::vector<std::vector<std::uint32_t>> blocks() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.block_of_ == b.block_of_; }

 private:
  std::vector<std::uint32_t> block_of_;
  std::vector<std::uint64_t> sizes_;
};

struct SeatingState {
  std::vector<std::uint64_t> table_sizes;  // in order of table creation
  std::uint64_t n = 0;
};

struct SeatingProbs {
  std::vector<double> table;
  double new_table = 0.0;
};

SeatingProbs crp_next_probs(const CrpParams& params, const SeatingState& state);

Partition crp_sample(const CrpParams& params, std::size_t n, RandomSource& rng);

// Ewens-Pitman law. alpha == 0 is delegated to ewens_log_pmf and theta == 0
// to theta_zero_log_pmf, where the general formula is 0/0.
SignedLogValue ewens_pitman_log_pmf(const CrpParams& params, const Partition& pi);

// theta^k / theta^(n rising) * prod (n_i - 1)!
SignedLogValue ewens_log_pmf(double theta, const Partition& pi);

// (k-1)! / (alpha (n-1)!) * prod -(-alpha)^(n_i rising), for 0 < alpha <= 1.
SignedLogValue theta_zero_log_pmf(double alpha, const Partition& pi);

// Every partition of an n-set in canonical form, 1 <= n <= 10.
std::vector<Partition> enumerate_partitions(std::size_t n);

}  // namespace exch
