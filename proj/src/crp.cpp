// SPDX-License-Identifier: Apache-2.0

#include "exch/crp.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>

#include "exch/error.hpp"

namespace exch {

CrpParams CrpParams::validate(double alpha, double theta) {
  std::ostringstream msg;
  msg << "crp: (alpha=" << alpha << ", theta=" << theta << ") ";
  if (!std::isfinite(alpha) || !std::isfinite(theta)) fail(Errc::InvalidParameter, msg.str() + "must be finite");

  if (alpha < 0.0) {
    const double ratio = theta / -alpha;
    const double k = std::round(ratio);
    if (k >= 1.0 && std::fabs(ratio - k) <= kIntegerTolerance) {
      const auto blocks = static_cast<std::uint64_t>(k);
      return CrpParams(alpha, -alpha * static_cast<double>(blocks), CrpCase::FiniteBlocks, blocks);
    }
    fail(Errc::InvalidParameter, msg.str() + "with alpha < 0 needs theta = -k alpha for a positive integer k");
  }
  if (alpha > 1.0) fail(Errc::InvalidParameter, msg.str() + "needs alpha <= 1");
  if (!(theta > -alpha)) fail(Errc::InvalidParameter, msg.str() + "with 0 <= alpha <= 1 needs theta > -alpha");
  return CrpParams(alpha, theta, CrpCase::InfiniteBlocks, 0);
}

double CrpParams::theta_over_alpha() const {
  if (kind_ == CrpCase::FiniteBlocks) return -static_cast<double>(k_);
  return theta_ / alpha_;
}

Partition Partition::from_assignment(std::span<const std::uint32_t> block_of) {
  Partition p;
  p.block_of_.reserve(block_of.size());
  std::unordered_map<std::uint32_t, std::uint32_t> relabel;
  for (std::uint32_t b : block_of) {
    auto [it, inserted] = relabel.try_emplace(b, static_cast<std::uint32_t>(relabel.size()));
    if (inserted) p.sizes_.push_back(0);
    ++p.sizes_[it->second];
    p.block_of_.push_back(it->second);
  }
  return p;
}

Partition Partition::from_blocks(const std::vector<std::vector<std::uint32_t>>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) {
    if (b.empty()) fail(Errc::InvalidParameter, "partition: empty block");
    n += b.size();
  }
  constexpr std::uint32_t unset = ~std::uint32_t{0};
  std::vector<std::uint32_t> assignment(n, unset);
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    for (std::uint32_t e : blocks[j]) {
      if (e >= n) fail(Errc::InvalidParameter, "partition: element " + std::to_string(e + 1) + " outside 1.." + std::to_string(n));
      if (assignment[e] != unset) fail(Errc::InvalidParameter, "partition: element " + std::to_string(e + 1) + " repeated");
      assignment[e] = static_cast<std::uint32_t>(j);
    }
  }
  return from_assignment(assignment);
}

std::vector<std::vector<std::uint32_t>> Partition::blocks() const {
  std::vector<std::vector<std::uint32_t>> out(sizes_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j].reserve(sizes_[j]);
  for (std::size_t i = 0; i < block_of_.size(); ++i) out[block_of_[i]].push_back(static_cast<std::uint32_t>(i));
  return out;
}

SeatingProbs crp_next_probs(const CrpParams& params, const SeatingState& state) {
  std::uint64_t seated = 0;
  for (auto t : state.table_sizes) {
    if (t == 0) fail(Errc::InvalidParameter, "seating: empty table in state");
    seated += t;
  }
  if (seated != state.n) fail(Errc::InvalidParameter, "seating: table sizes do not sum to n");

  SeatingProbs out;
  if (state.n == 0) {
    out.new_table = 1.0;
    return out;
  }
  const double alpha = params.alpha();
  const double denom = static_cast<double>(state.n) + params.theta();
  out.table.reserve(state.table_sizes.size());
  for (auto t : state.table_sizes) out.table.push_back((static_cast<double>(t) - alpha) / denom);
  const auto m = static_cast<double>(state.table_sizes.size());
  out.new_table = (m * alpha + params.theta()) / denom;
  return out;
}

Partition crp_sample(const CrpParams& params, std::size_t n, RandomSource& rng) {
  std::vector<std::uint32_t> assignment;
  assignment.reserve(n);
  std::vector<std::uint64_t> tables;
  const double alpha = params.alpha();
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      tables.push_back(1);
      assignment.push_back(0);
      continue;
    }
    const double new_weight = static_cast<double>(tables.size()) * alpha + params.theta();
    const double target = rng.uniform() * (static_cast<double>(i) + params.theta());
    double cum = 0.0;
    std::size_t choice = tables.size();
    for (std::size_t j = 0; j < tables.size(); ++j) {
      cum += static_cast<double>(tables[j]) - alpha;
      if (target < cum) {
        choice = j;
        break;
      }
    }
    // Rounding can push the target past the last table when no new table is
    // possible (finite case at capacity).
    if (choice == tables.size() && !(new_weight > 0.0)) choice = tables.size() - 1;
    if (choice == tables.size()) tables.push_back(0);
    ++tables[choice];
    assignment.push_back(static_cast<std::uint32_t>(choice));
  }
  return Partition::from_assignment(assignment);
}

namespace {

// prod_i -(-alpha)^(n_i rising)
SignedLogValue block_factor(double alpha, const std::vector<std::uint64_t>& sizes) {
  SignedLogValue p = SignedLogValue::one();
  for (auto s : sizes) p *= -rising(-alpha, s);
  return p;
}

}  // namespace

SignedLogValue ewens_pitman_log_pmf(const CrpParams& params, const Partition& pi) {
  if (pi.n() == 0) return SignedLogValue::one();
  if (params.alpha() == 0.0) return ewens_log_pmf(params.theta(), pi);
  if (params.theta() == 0.0) return theta_zero_log_pmf(params.alpha(), pi);
  const std::uint64_t k = pi.num_blocks();
  return rising(params.theta_over_alpha(), k) / rising(params.theta(), pi.n()) *
         block_factor(params.alpha(), pi.block_sizes());
}

SignedLogValue ewens_log_pmf(double theta, const Partition& pi) {
  if (!(theta > 0.0) || !std::isfinite(theta)) fail(Errc::InvalidParameter, "ewens: theta must be positive");
  if (pi.n() == 0) return SignedLogValue::one();
  double logp = static_cast<double>(pi.num_blocks()) * std::log(theta);
  for (auto s : pi.block_sizes()) logp += log_factorial(s - 1);
  return SignedLogValue(1, logp) / rising(theta, pi.n());
}

SignedLogValue theta_zero_log_pmf(double alpha, const Partition& pi) {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(Errc::InvalidParameter, "theta=0 law: alpha must lie in (0, 1]");
  if (pi.n() == 0) return SignedLogValue::one();
  const double lead = log_factorial(pi.num_blocks() - 1) - std::log(alpha) - log_factorial(pi.n() - 1);
  return SignedLogValue(1, lead) * block_factor(alpha, pi.block_sizes());
}

std::vector<Partition> enumerate_partitions(std::size_t n) {
  if (n < 1 || n > 10) fail(Errc::OutOfRange, "enumerate_partitions: n must be in 1..10, got " + std::to_string(n));
  std::vector<Partition> out;
  // Restricted growth strings a[0] = 0, a[i] <= 1 + max(a[0..i-1]), in
  // lexicographic order.
  std::vector<std::uint32_t> a(n, 0);
  std::vector<std::uint32_t> prefix_max(n, 0);
  for (;;) {
    out.push_back(Partition::from_assignment(a));
    std::size_t i = n - 1;
    while (i > 0 && a[i] > prefix_max[i - 1]) --i;
    if (i == 0) break;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

}  // namespace exch
