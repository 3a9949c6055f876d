/* SPDX-License-Identifier: Apache-2.0 */
/* Exercises the C interface from a C translation unit. */

#include <math.h>
#include <stdio.h>

#include "exch/exch.h"

static int failures = 0;

#define EXPECT(cond)                                          \
  do {                                                        \
    if (!(cond)) {                                            \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                             \
    }                                                         \
  } while (0)

static int close_to(double a, double b) { return fabs(a - b) <= 1e-12 * fmax(1.0, fabs(b)); }

int main(void) {
  exch_signed_log v;
  EXPECT(exch_rising(-0.5, 2, &v) == EXCH_OK);
  EXPECT(v.sign == -1 && close_to(exp(v.logmag), 0.25));
  EXPECT(exch_falling(-1.0, 3, &v) == EXCH_OK && v.sign == -1 && close_to(exp(v.logmag), 6.0));
  EXPECT(exch_gen_binom(0.5, 2, &v) == EXCH_OK && v.sign == -1 && close_to(exp(v.logmag), 0.125));
  EXPECT(exch_rising(1.0, 2, NULL) == EXCH_ERR_NULL_ARGUMENT);

  exch_rng* rng = NULL;
  EXPECT(exch_rng_create(7, &rng) == EXCH_OK);

  const double urn[2] = {1.0, 1.0};
  const uint32_t seq[2] = {1, 1};
  EXPECT(exch_polya_seq_log_pmf(urn, 2, seq, 2, &v) == EXCH_OK && close_to(exp(v.logmag), 1.0 / 3.0));
  const uint32_t bad_seq[2] = {0, 1};
  EXPECT(exch_polya_seq_log_pmf(urn, 2, bad_seq, 2, &v) == EXCH_ERR_OUT_OF_RANGE);
  EXPECT(exch_last_error()[0] != '\0');
  const uint64_t counts[2] = {1, 1};
  EXPECT(exch_polya_count_log_pmf(urn, 2, counts, &v) == EXCH_OK && close_to(exp(v.logmag), 1.0 / 3.0));

  uint32_t labels[16];
  EXPECT(exch_polya_sample(urn, 2, 16, rng, labels) == EXCH_OK);
  for (int i = 0; i < 16; ++i) EXPECT(labels[i] == 1 || labels[i] == 2);

  const double dir[3] = {1.0, 2.0, 3.0};
  double x[3];
  EXPECT(exch_dirichlet_sample(dir, 3, EXCH_DIRICHLET_STICK, rng, x) == EXCH_OK);
  EXPECT(close_to(x[0] + x[1] + x[2], 1.0));
  const double two_one[2] = {2.0, 1.0};
  const double mid[2] = {0.5, 0.5};
  double density;
  EXPECT(exch_dirichlet_log_density(two_one, mid, 2, &density) == EXCH_OK && close_to(exp(density), 1.0));

  exch_crp* crp = NULL;
  EXPECT(exch_crp_create(-1.0, 2.5, &crp) == EXCH_ERR_INVALID_PARAM && crp == NULL);
  EXPECT(exch_crp_create(-1.0, 2.0, &crp) == EXCH_OK);
  double alpha, theta;
  int finite;
  uint64_t k;
  EXPECT(exch_crp_info(crp, &alpha, &theta, &finite, &k) == EXCH_OK);
  EXPECT(finite == 1 && k == 2 && theta == 2.0);

  const uint32_t elements[3] = {1, 2, 3};
  const size_t one_block[1] = {3};
  exch_partition* pi = NULL;
  EXPECT(exch_partition_create(elements, one_block, 1, &pi) == EXCH_OK);
  EXPECT(exch_ewens_pitman_log_pmf(crp, pi, &v) == EXCH_OK && close_to(exp(v.logmag), 0.5));
  exch_partition_destroy(pi);

  const size_t singletons[3] = {1, 1, 1};
  EXPECT(exch_partition_create(elements, singletons, 3, &pi) == EXCH_OK);
  EXPECT(exch_ewens_pitman_log_pmf(crp, pi, &v) == EXCH_OK && v.sign == 0);
  EXPECT(exch_ewens_log_pmf(1.0, pi, &v) == EXCH_OK && close_to(exp(v.logmag), 1.0 / 6.0));
  exch_partition_destroy(pi);
  exch_crp_destroy(crp);

  EXPECT(exch_crp_create(0.5, 0.5, &crp) == EXCH_OK);
  EXPECT(exch_crp_sample(crp, 25, rng, &pi) == EXCH_OK);
  EXPECT(exch_partition_size(pi) == 25);
  size_t blocks = exch_partition_num_blocks(pi);
  double weights[25];
  EXPECT(exch_block_weights(pi, weights) == EXCH_OK);
  double total = 0.0;
  for (size_t j = 0; j < blocks; ++j) total += weights[j];
  EXPECT(close_to(total, 1.0));
  uint32_t tiny[1];
  if (exch_partition_block_size(pi, 0) > 1) EXPECT(exch_partition_block(pi, 0, tiny, 1) == EXCH_ERR_BUFFER_TOO_SMALL);
  EXPECT(exch_partition_block(pi, blocks, tiny, 1) == EXCH_ERR_OUT_OF_RANGE);
  exch_partition_destroy(pi);

  double gem[4], residual;
  EXPECT(exch_gem_sample(crp, 4, rng, gem, &residual) == EXCH_OK);
  EXPECT(close_to(gem[0] + gem[1] + gem[2] + gem[3] + residual, 1.0));
  const double unsorted[3] = {0.2, 0.5, 0.3};
  double sorted[3];
  EXPECT(exch_rank_weights(unsorted, 3, sorted) == EXCH_OK && sorted[0] == 0.5 && sorted[2] == 0.2);
  const uint64_t sizes[2] = {1, 1};
  double prob;
  EXPECT(exch_block_count_prob(crp, 2, sizes, 2, &prob) == EXCH_OK && close_to(prob, 2.0 / 3.0));
  const double xs[2] = {0.7, 0.6};
  double rho;
  EXPECT(exch_rho_k(crp, xs, 2, &rho) == EXCH_ERR_DOMAIN);
  exch_crp_destroy(crp);

  EXPECT(exch_suite_count() == 6);
  exch_report_list* reports = NULL;
  EXPECT(exch_verify_run("bogus", 1, &reports) == EXCH_ERR_UNKNOWN_SUITE);
  EXPECT(exch_verify_run("polya-exact", 42, &reports) == EXCH_OK);
  for (size_t i = 0; i < exch_report_count(reports); ++i) {
    exch_report_view r;
    EXPECT(exch_report_get(reports, i, &r) == EXCH_OK);
    EXPECT(r.passed == 1);
  }
  exch_report_list_destroy(reports);
  exch_rng_destroy(rng);

  if (failures == 0) printf("C interface: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
