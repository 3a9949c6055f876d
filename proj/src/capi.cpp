// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstring>
#include <functional>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "exch/crp.hpp"
#include "exch/dist.hpp"
#include "exch/error.hpp"
#include "exch/exch.h"
#include "exch/numkern.hpp"
#include "exch/polya.hpp"
#include "exch/random.hpp"
#include "exch/verify.hpp"
#include "exch/weights.hpp"

struct exch_rng {
  exch::RandomSource source;
};

struct exch_crp {
  exch::CrpParams params;
};

struct exch_partition {
  exch::Partition value;
};

struct exch_report_list {
  std::vector<exch::TestReport> reports;
};

namespace {

thread_local std::string last_error;

exch_status to_status(exch::Errc code) {
  switch (code) {
    case exch::Errc::InvalidParameter: return EXCH_ERR_INVALID_PARAM;
    case exch::Errc::Domain: return EXCH_ERR_DOMAIN;
    case exch::Errc::DimensionMismatch: return EXCH_ERR_DIMENSION;
    case exch::Errc::OutOfRange: return EXCH_ERR_OUT_OF_RANGE;
    case exch::Errc::UnknownSuite: return EXCH_ERR_UNKNOWN_SUITE;
  }
  return EXCH_ERR_INTERNAL;
}

// Runs body, translating exceptions into status codes and the thread's error
// message.
exch_status guarded(const std::function<void()>& body) {
  last_error.clear();
  try {
    body();
    return EXCH_OK;
  } catch (const exch::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return EXCH_ERR_INTERNAL;
}

exch_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return EXCH_ERR_NULL_ARGUMENT;
}

#define EXCH_REQUIRE(ptr)                      \
  do {                                         \
    if ((ptr) == nullptr) return null_argument(#ptr); \
  } while (0)

exch_signed_log to_c(const exch::SignedLogValue& v) { return {v.sign(), v.logmag()}; }

std::vector<double> copy_alphas(const double* alphas, size_t k) { return {alphas, alphas + k}; }

std::vector<std::uint32_t> to_zero_based(const uint32_t* labels, size_t n,
                                         size_t max_label = std::numeric_limits<uint32_t>::max()) {
  std::vector<std::uint32_t> out(n);
  for (size_t i = 0; i < n; ++i) {
    if (labels[i] == 0 || labels[i] > max_label) {
      exch::fail(exch::Errc::OutOfRange,
                 "label " + std::to_string(labels[i]) + " outside 1.." + std::to_string(max_label));
    }
    out[i] = labels[i] - 1;
  }
  return out;
}

}  // namespace

extern "C" {

const char* exch_last_error(void) { return last_error.c_str(); }

const char* exch_version(void) { return "1.0.0"; }

exch_status exch_rising(double x, uint64_t n, exch_signed_log* out) {
  EXCH_REQUIRE(out);
  return guarded([&] { *out = to_c(exch::rising(x, n)); });
}

exch_status exch_falling(double x, uint64_t n, exch_signed_log* out) {
  EXCH_REQUIRE(out);
  return guarded([&] { *out = to_c(exch::falling(x, n)); });
}

exch_status exch_gen_binom(double x, uint64_t m, exch_signed_log* out) {
  EXCH_REQUIRE(out);
  return guarded([&] { *out = to_c(exch::gen_binom(x, m)); });
}

exch_status exch_rng_create(uint64_t seed, exch_rng** out) {
  EXCH_REQUIRE(out);
  return guarded([&] { *out = new exch_rng{exch::RandomSource(seed)}; });
}

void exch_rng_destroy(exch_rng* rng) { delete rng; }

exch_status exch_rng_uniform(exch_rng* rng, double* out) {
  EXCH_REQUIRE(rng);
  EXCH_REQUIRE(out);
  return guarded([&] { *out = rng->source.uniform(); });
}

exch_status exch_polya_sample(const double* alphas, size_t k, size_t n, exch_rng* rng, uint32_t* out_labels) {
  EXCH_REQUIRE(alphas);
  EXCH_REQUIRE(rng);
  if (n > 0) EXCH_REQUIRE(out_labels);
  return guarded([&] {
    const exch::UrnParams params(copy_alphas(alphas, k));
    const auto seq = exch::polya_sample(params, n, rng->source);
    for (size_t i = 0; i < n; ++i) out_labels[i] = seq[i] + 1;
  });
}

exch_status exch_polya_seq_log_pmf(const double* alphas, size_t k, const uint32_t* labels, size_t n,
                                   exch_signed_log* out) {
  EXCH_REQUIRE(alphas);
  EXCH_REQUIRE(out);
  if (n > 0) EXCH_REQUIRE(labels);
  return guarded([&] {
    const exch::UrnParams params(copy_alphas(alphas, k));
    *out = to_c(exch::polya_seq_log_pmf(params, to_zero_based(labels, n, k)));
  });
}

exch_status exch_polya_count_log_pmf(const double* alphas, size_t k, const uint64_t* counts, exch_signed_log* out) {
  EXCH_REQUIRE(alphas);
  EXCH_REQUIRE(counts);
  EXCH_REQUIRE(out);
  return guarded([&] {
    const exch::UrnParams params(copy_alphas(alphas, k));
    const std::vector<std::uint64_t> c(counts, counts + k);
    *out = to_c(exch::polya_count_log_pmf(params, c));
  });
}

exch_status exch_dirichlet_sample(const double* alphas, size_t k, exch_dirichlet_method method, exch_rng* rng,
                                  double* out) {
  EXCH_REQUIRE(alphas);
  EXCH_REQUIRE(rng);
  EXCH_REQUIRE(out);
  return guarded([&] {
    const std::span<const double> a(alphas, k);
    exch::SimplexVector x = [&] {
      switch (method) {
        case EXCH_DIRICHLET_GAMMA: return exch::sample_dirichlet_gamma(a, rng->source);
        case EXCH_DIRICHLET_STICK: return exch::sample_dirichlet_stick(a, rng->source);
      }
      exch::fail(exch::Errc::InvalidParameter, "unknown dirichlet method");
    }();
    std::copy(x.weights().begin(), x.weights().end(), out);
  });
}

exch_status exch_dirichlet_log_density(const double* alphas, const double* x, size_t k, double* out) {
  EXCH_REQUIRE(alphas);
  EXCH_REQUIRE(x);
  EXCH_REQUIRE(out);
  return guarded([&] { *out = exch::dirichlet_log_density({alphas, k}, {x, k}); });
}

exch_status exch_crp_create(double alpha, double theta, exch_crp** out) {
  EXCH_REQUIRE(out);
  return guarded([&] { *out = new exch_crp{exch::CrpParams::validate(alpha, theta)}; });
}

void exch_crp_destroy(exch_crp* params) { delete params; }

exch_status exch_crp_info(const exch_crp* params, double* alpha, double* theta, int* finite_blocks,
                          uint64_t* max_blocks) {
  EXCH_REQUIRE(params);
  if (alpha) *alpha = params->params.alpha();
  if (theta) *theta = params->params.theta();
  if (finite_blocks) *finite_blocks = params->params.finite_blocks() ? 1 : 0;
  if (max_blocks) *max_blocks = params->params.max_blocks();
  return EXCH_OK;
}

exch_status exch_partition_create(const uint32_t* elements, const size_t* block_lengths, size_t num_blocks,
                                  exch_partition** out) {
  EXCH_REQUIRE(out);
  if (num_blocks > 0) {
    EXCH_REQUIRE(elements);
    EXCH_REQUIRE(block_lengths);
  }
  return guarded([&] {
    std::vector<std::vector<std::uint32_t>> blocks(num_blocks);
    size_t offset = 0;
    for (size_t j = 0; j < num_blocks; ++j) {
      blocks[j] = to_zero_based(elements + offset, block_lengths[j]);
      offset += block_lengths[j];
    }
    *out = new exch_partition{exch::Partition::from_blocks(blocks)};
  });
}

void exch_partition_destroy(exch_partition* pi) { delete pi; }

size_t exch_partition_size(const exch_partition* pi) { return pi ? pi->value.n() : 0; }

size_t exch_partition_num_blocks(const exch_partition* pi) { return pi ? pi->value.num_blocks() : 0; }

size_t exch_partition_block_size(const exch_partition* pi, size_t block) {
  if (!pi || block >= pi->value.num_blocks()) return 0;
  return pi->value.block_sizes()[block];
}

exch_status exch_partition_block(const exch_partition* pi, size_t block, uint32_t* out, size_t capacity) {
  EXCH_REQUIRE(pi);
  if (block >= pi->value.num_blocks()) {
    last_error = "block index out of range";
    return EXCH_ERR_OUT_OF_RANGE;
  }
  const auto size = pi->value.block_sizes()[block];
  if (capacity < size) {
    last_error = "output buffer holds " + std::to_string(capacity) + " elements, block has " + std::to_string(size);
    return EXCH_ERR_BUFFER_TOO_SMALL;
  }
  EXCH_REQUIRE(out);
  size_t w = 0;
  for (size_t i = 0; i < pi->value.n(); ++i) {
    if (pi->value.block_of(i) == block) out[w++] = static_cast<uint32_t>(i + 1);
  }
  return EXCH_OK;
}

exch_status exch_crp_sample(const exch_crp* params, size_t n, exch_rng* rng, exch_partition** out) {
  EXCH_REQUIRE(params);
  EXCH_REQUIRE(rng);
  EXCH_REQUIRE(out);
  return guarded([&] { *out = new exch_partition{exch::crp_sample(params->params, n, rng->source)}; });
}

exch_status exch_ewens_pitman_log_pmf(const exch_crp* params, const exch_partition* pi, exch_signed_log* out) {
  EXCH_REQUIRE(params);
  EXCH_REQUIRE(pi);
  EXCH_REQUIRE(out);
  return guarded([&] { *out = to_c(exch::ewens_pitman_log_pmf(params->params, pi->value)); });
}

exch_status exch_ewens_log_pmf(double theta, const exch_partition* pi, exch_signed_log* out) {
  EXCH_REQUIRE(pi);
  EXCH_REQUIRE(out);
  return guarded([&] { *out = to_c(exch::ewens_log_pmf(theta, pi->value)); });
}

exch_status exch_theta_zero_log_pmf(double alpha, const exch_partition* pi, exch_signed_log* out) {
  EXCH_REQUIRE(pi);
  EXCH_REQUIRE(out);
  return guarded([&] { *out = to_c(exch::theta_zero_log_pmf(alpha, pi->value)); });
}

exch_status exch_block_weights(const exch_partition* pi, double* out) {
  EXCH_REQUIRE(pi);
  EXCH_REQUIRE(out);
  return guarded([&] {
    const auto w = exch::empirical_block_weights(pi->value);
    std::copy(w.weights.begin(), w.weights.end(), out);
  });
}

exch_status exch_gem_sample(const exch_crp* params, size_t depth, exch_rng* rng, double* out, double* residual) {
  EXCH_REQUIRE(params);
  EXCH_REQUIRE(rng);
  EXCH_REQUIRE(out);
  EXCH_REQUIRE(residual);
  return guarded([&] {
    const auto w = exch::gem_sample(params->params, depth, rng->source);
    std::copy(w.weights.begin(), w.weights.end(), out);
    *residual = w.residual;
  });
}

exch_status exch_rank_weights(const double* weights, size_t m, double* out) {
  if (m > 0) {
    EXCH_REQUIRE(weights);
    EXCH_REQUIRE(out);
  }
  return guarded([&] {
    const auto r = exch::rank_weights(exch::WeightSequence{{weights, weights + m}, 0.0});
    std::copy(r.weights.begin(), r.weights.end(), out);
  });
}

exch_status exch_block_count_prob(const exch_crp* params, uint64_t n, const uint64_t* sizes, size_t k, double* out) {
  EXCH_REQUIRE(params);
  EXCH_REQUIRE(out);
  if (k > 0) EXCH_REQUIRE(sizes);
  return guarded([&] { *out = exch::block_count_prob(params->params, n, {sizes, k}); });
}

exch_status exch_rho_k(const exch_crp* params, const double* xs, size_t k, double* out) {
  EXCH_REQUIRE(params);
  EXCH_REQUIRE(out);
  if (k > 0) EXCH_REQUIRE(xs);
  return guarded([&] { *out = exch::rho_k(params->params, {xs, k}); });
}

size_t exch_suite_count(void) { return exch::suite_names().size(); }

const char* exch_suite_name(size_t index) {
  const auto& names = exch::suite_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

exch_status exch_verify_run(const char* suite, uint64_t seed, exch_report_list** out) {
  EXCH_REQUIRE(suite);
  EXCH_REQUIRE(out);
  return guarded([&] { *out = new exch_report_list{exch::run_suite(suite, seed)}; });
}

void exch_report_list_destroy(exch_report_list* list) { delete list; }

size_t exch_report_count(const exch_report_list* list) { return list ? list->reports.size() : 0; }

exch_status exch_report_get(const exch_report_list* list, size_t index, exch_report_view* out) {
  EXCH_REQUIRE(list);
  EXCH_REQUIRE(out);
  if (index >= list->reports.size()) {
    last_error = "report index out of range";
    return EXCH_ERR_OUT_OF_RANGE;
  }
  const auto& r = list->reports[index];
  *out = {r.name.c_str(), r.details.c_str(), r.statistic, r.threshold, r.passed ? 1 : 0, r.control ? 1 : 0, r.seed};
  return EXCH_OK;
}

}  // extern "C"
