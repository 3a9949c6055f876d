/* SPDX-License-Identifier: Apache-2.0 */

/*
 * C interface to the exch library: Polya urns, Chinese restaurant processes,
 * Dirichlet and GEM constructions, Ewens-Pitman laws, Poisson-Dirichlet
 * correlation functions and the verification suites.
 *
 * Conventions:
 *  - Every fallible call returns an exch_status; on failure a message is
 *    available from exch_last_error() on the same thread until the next call.
 *  - Objects are opaque handles created by exch_*_create / produced by a
 *    sampler and released by the matching *_destroy (NULL is accepted).
 *  - Labels and partition elements are 1-based on this interface.
 *  - Output arrays are caller-allocated; sizes are documented per call.
 */

#ifndef EXCH_EXCH_H
#define EXCH_EXCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EXCH_BUILDING_LIBRARY)
#    define EXCH_API __declspec(dllexport)
#  else
#    define EXCH_API __declspec(dllimport)
#  endif
#else
#  define EXCH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum exch_status {
  EXCH_OK = 0,
  EXCH_ERR_INVALID_PARAM = 1,
  EXCH_ERR_DOMAIN = 2,
  EXCH_ERR_DIMENSION = 3,
  EXCH_ERR_OUT_OF_RANGE = 4,
  EXCH_ERR_UNKNOWN_SUITE = 5,
  EXCH_ERR_NULL_ARGUMENT = 6,
  EXCH_ERR_BUFFER_TOO_SMALL = 7,
  EXCH_ERR_INTERNAL = 99
} exch_status;

/* Sign in {-1, 0, +1} and natural log of the magnitude (0 when sign is 0). */
typedef struct exch_signed_log {
  int sign;
  double logmag;
} exch_signed_log;

typedef enum exch_dirichlet_method { EXCH_DIRICHLET_GAMMA = 0, EXCH_DIRICHLET_STICK = 1 } exch_dirichlet_method;

typedef struct exch_rng exch_rng;
typedef struct exch_crp exch_crp;
typedef struct exch_partition exch_partition;
typedef struct exch_report_list exch_report_list;

EXCH_API const char* exch_last_error(void);
EXCH_API const char* exch_version(void);

/* ---- numeric kernels ---- */
EXCH_API exch_status exch_rising(double x, uint64_t n, exch_signed_log* out);
EXCH_API exch_status exch_falling(double x, uint64_t n, exch_signed_log* out);
EXCH_API exch_status exch_gen_binom(double x, uint64_t m, exch_signed_log* out);

/* ---- random source (xoshiro256** seeded via splitmix64) ---- */
EXCH_API exch_status exch_rng_create(uint64_t seed, exch_rng** out);
EXCH_API void exch_rng_destroy(exch_rng* rng);
EXCH_API exch_status exch_rng_uniform(exch_rng* rng, double* out);

/* ---- Polya urn ---- */
/* out_labels receives n labels in 1..k. */
EXCH_API exch_status exch_polya_sample(const double* alphas, size_t k, size_t n, exch_rng* rng, uint32_t* out_labels);
EXCH_API exch_status exch_polya_seq_log_pmf(const double* alphas, size_t k, const uint32_t* labels, size_t n,
                                            exch_signed_log* out);
/* counts has length k. */
EXCH_API exch_status exch_polya_count_log_pmf(const double* alphas, size_t k, const uint64_t* counts,
                                              exch_signed_log* out);
/* out receives k simplex coordinates. */
EXCH_API exch_status exch_dirichlet_sample(const double* alphas, size_t k, exch_dirichlet_method method, exch_rng* rng,
                                           double* out);
EXCH_API exch_status exch_dirichlet_log_density(const double* alphas, const double* x, size_t k, double* out);

/* ---- Chinese restaurant process ---- */
EXCH_API exch_status exch_crp_create(double alpha, double theta, exch_crp** out);
EXCH_API void exch_crp_destroy(exch_crp* params);
/* finite_blocks is 1 for alpha < 0 (then max_blocks = k), else 0. theta is
 * the validated value (snapped to -k alpha in the finite case). */
EXCH_API exch_status exch_crp_info(const exch_crp* params, double* alpha, double* theta, int* finite_blocks,
                                   uint64_t* max_blocks);

/* Builds a partition from concatenated 1-based block elements: block j holds
 * elements[offset_j .. offset_j + block_lengths[j]). */
EXCH_API exch_status exch_partition_create(const uint32_t* elements, const size_t* block_lengths, size_t num_blocks,
                                           exch_partition** out);
EXCH_API void exch_partition_destroy(exch_partition* pi);
EXCH_API size_t exch_partition_size(const exch_partition* pi);
EXCH_API size_t exch_partition_num_blocks(const exch_partition* pi);
EXCH_API size_t exch_partition_block_size(const exch_partition* pi, size_t block);
/* Copies the sorted 1-based elements of a block (canonical block order). */
EXCH_API exch_status exch_partition_block(const exch_partition* pi, size_t block, uint32_t* out, size_t capacity);

EXCH_API exch_status exch_crp_sample(const exch_crp* params, size_t n, exch_rng* rng, exch_partition** out);
EXCH_API exch_status exch_ewens_pitman_log_pmf(const exch_crp* params, const exch_partition* pi, exch_signed_log* out);
EXCH_API exch_status exch_ewens_log_pmf(double theta, const exch_partition* pi, exch_signed_log* out);
EXCH_API exch_status exch_theta_zero_log_pmf(double alpha, const exch_partition* pi, exch_signed_log* out);

/* ---- block weights ---- */
/* out receives exch_partition_num_blocks(pi) weights in order of appearance. */
EXCH_API exch_status exch_block_weights(const exch_partition* pi, double* out);
/* out receives depth weights; residual receives the untracked mass. */
EXCH_API exch_status exch_gem_sample(const exch_crp* params, size_t depth, exch_rng* rng, double* out, double* residual);
/* Sorts weights non-increasing into out (may alias weights). */
EXCH_API exch_status exch_rank_weights(const double* weights, size_t m, double* out);
EXCH_API exch_status exch_block_count_prob(const exch_crp* params, uint64_t n, const uint64_t* sizes, size_t k,
                                           double* out);
EXCH_API exch_status exch_rho_k(const exch_crp* params, const double* xs, size_t k, double* out);

/* ---- verification ---- */
EXCH_API size_t exch_suite_count(void);
EXCH_API const char* exch_suite_name(size_t index);
EXCH_API exch_status exch_verify_run(const char* suite, uint64_t seed, exch_report_list** out);
EXCH_API void exch_report_list_destroy(exch_report_list* list);
EXCH_API size_t exch_report_count(const exch_report_list* list);

/* Strings stay valid until the list is destroyed. */
typedef struct exch_report_view {
  const char* name;
  const char* details;
  double statistic;
  double threshold;
  int passed;
  int control;
  uint64_t seed;
} exch_report_view;

EXCH_API exch_status exch_report_get(const exch_report_list* list, size_t index, exch_report_view* out);

#ifdef __cplusplus
}
#endif

#endif /* EXCH_EXCH_H */
