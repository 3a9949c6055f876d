// SPDX-License-Identifier: Apache-2.0

#include "exch/polya.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "exch/error.hpp"

namespace exch {

UrnParams::UrnParams(std::vector<double> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.empty()) fail(Errc::InvalidParameter, "urn: need at least one label");
  for (double a : alphas_) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      fail(Errc::InvalidParameter, "urn: alpha must be positive and finite, got " + std::to_string(a));
    }
    total_ += a;
  }
}

CountVector count_labels(std::size_t k, std::span<const std::uint32_t> seq) {
  CountVector counts(k, 0);
  for (std::uint32_t label : seq) {
    if (label >= k) fail(Errc::OutOfRange, "label " + std::to_string(label) + " outside 0.." + std::to_string(k - 1));
    ++counts[label];
  }
  return counts;
}

namespace {

void require_dimension(const UrnParams& params, std::size_t got) {
  if (got != params.k()) {
    fail(Errc::DimensionMismatch,
         "urn has " + std::to_string(params.k()) + " labels but counts have length " + std::to_string(got));
  }
}

std::uint64_t total_of(std::span<const std::uint64_t> counts) {
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

}  // namespace

SimplexVector polya_next_probs(const UrnParams& params, std::span<const std::uint64_t> counts) {
  require_dimension(params, counts.size());
  const double denom = params.total() + static_cast<double>(total_of(counts));
  std::vector<double> p(params.k());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = (params.alpha(i) + static_cast<double>(counts[i])) / denom;
  return SimplexVector(std::move(p));
}

namespace {

// One urn draw from the unnormalised weights alpha_i + n_i; equivalent to
// sample_categorical(polya_next_probs(...)) without the allocation.
std::uint32_t draw_label(const UrnParams& params, const CountVector& counts, std::uint64_t n, RandomSource& rng) {
  const double target = rng.uniform() * (params.total() + static_cast<double>(n));
  double cum = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    cum += params.alpha(i) + static_cast<double>(counts[i]);
    if (target < cum) return static_cast<std::uint32_t>(i);
  }
  return static_cast<std::uint32_t>(counts.size() - 1);
}

}  // namespace

LabelSequence polya_sample(const UrnParams& params, std::size_t n, RandomSource& rng) {
  LabelSequence seq;
  seq.reserve(n);
  CountVector counts(params.k(), 0);
  for (std::size_t t = 0; t < n; ++t) {
    const std::uint32_t label = draw_label(params, counts, t, rng);
    ++counts[label];
    seq.push_back(label);
  }
  return seq;
}

CountVector polya_sample_counts(const UrnParams& params, std::size_t n, RandomSource& rng) {
  CountVector counts(params.k(), 0);
  for (std::size_t t = 0; t < n; ++t) ++counts[draw_label(params, counts, t, rng)];
  return counts;
}

namespace {

SignedLogValue sequence_law(const UrnParams& params, std::span<const std::uint64_t> counts) {
  SignedLogValue p = SignedLogValue::one();
  for (std::size_t i = 0; i < counts.size(); ++i) p *= rising(params.alpha(i), counts[i]);
  return p / rising(params.total(), total_of(counts));
}

}  // namespace

SignedLogValue polya_seq_log_pmf(const UrnParams& params, std::span<const std::uint32_t> seq) {
  const CountVector counts = count_labels(params.k(), seq);
  return sequence_law(params, counts);
}

SignedLogValue polya_count_log_pmf(const UrnParams& params, std::span<const std::uint64_t> counts) {
  require_dimension(params, counts.size());
  double log_multinomial = log_factorial(total_of(counts));
  for (auto c : counts) log_multinomial -= log_factorial(c);
  return SignedLogValue(1, log_multinomial) * sequence_law(params, counts);
}

double dirichlet_log_density(std::span<const double> alphas, std::span<const double> x) {
  if (alphas.empty()) fail(Errc::InvalidParameter, "dirichlet: need at least one alpha");
  if (alphas.size() != x.size()) fail(Errc::DimensionMismatch, "dirichlet: alphas and x differ in length");
  double sum_x = 0.0;
  for (double xi : x) {
    if (!(xi >= 0.0) || !std::isfinite(xi)) fail(Errc::Domain, "dirichlet: x has a negative or non-finite entry");
    sum_x += xi;
  }
  if (std::fabs(sum_x - 1.0) > 1e-9) fail(Errc::Domain, "dirichlet: x is not on the simplex");

  double total = 0.0;
  double log_norm = 0.0;
  for (double a : alphas) {
    if (!(a > 0.0) || !std::isfinite(a)) fail(Errc::InvalidParameter, "dirichlet: alpha must be positive");
    total += a;
    log_norm -= std::lgamma(a);
  }
  log_norm += std::lgamma(total);

  constexpr double inf = std::numeric_limits<double>::infinity();
  bool infinite = false;
  double log_f = log_norm;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (alphas[i] == 1.0) continue;
    if (x[i] == 0.0) {
      if (alphas[i] > 1.0) return -inf;
      infinite = true;
      continue;
    }
    log_f += (alphas[i] - 1.0) * std::log(x[i]);
  }
  return infinite ? inf : log_f;
}

SimplexVector aggregate_simplex(const SimplexVector& x, const std::vector<std::vector<std::size_t>>& blocks) {
  std::vector<bool> seen(x.size(), false);
  std::size_t covered = 0;
  std::vector<double> out;
  out.reserve(blocks.size());
  for (const auto& block : blocks) {
    if (block.empty()) fail(Errc::InvalidParameter, "aggregate: empty block");
    double s = 0.0;
    for (std::size_t i : block) {
      if (i >= x.size() || seen[i]) fail(Errc::InvalidParameter, "aggregate: blocks do not partition the labels");
      seen[i] = true;
      ++covered;
      s += x[i];
    }
    out.push_back(s);
  }
  if (covered != x.size()) fail(Errc::InvalidParameter, "aggregate: blocks do not cover every label");
  return SimplexVector(std::move(out));
}

SimplexVector normalize_subvector(const SimplexVector& x, std::span<const std::size_t> indices) {
  if (indices.empty()) fail(Errc::InvalidParameter, "normalize: empty index list");
  std::vector<bool> seen(x.size(), false);
  std::vector<double> out;
  out.reserve(indices.size());
  double mass = 0.0;
  for (std::size_t i : indices) {
    if (i >= x.size() || seen[i]) fail(Errc::InvalidParameter, "normalize: indices must be distinct and in range");
    seen[i] = true;
    out.push_back(x[i]);
    mass += x[i];
  }
  if (!(mass > 0.0)) fail(Errc::Domain, "normalize: subset has zero mass");
  for (double& v : out) v /= mass;
  return SimplexVector(std::move(out));
}

}  // namespace exch
