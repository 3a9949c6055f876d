// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include "exch/dist.hpp"
#include "exch/error.hpp"
#include "exch/verify.hpp"
#include "exch/weights.hpp"

namespace exch {
namespace {

using Check = std::function<void(std::uint64_t seed, std::vector<TestReport>& out)>;

TestReport within(std::string name, double statistic, double threshold, std::uint64_t seed, std::string details = {}) {
  return {std::move(name), statistic, threshold, statistic <= threshold, false, seed, std::move(details)};
}

// Negative control: the hypothesis is wrong on purpose and must be rejected.
TestReport rejects(std::string name, double statistic, double threshold, std::uint64_t seed, std::string details = {}) {
  return {std::move(name), statistic, threshold, statistic > threshold, true, seed, std::move(details)};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

double uniform_in(RandomSource& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

// Relative difference that treats two exact zeros as equal.
double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
}

double rel_diff(const SignedLogValue& a, const SignedLogValue& b) {
  if (a.sign() != b.sign()) return HUGE_VAL;
  if (a.is_zero()) return 0.0;
  return std::fabs(std::expm1(a.logmag() - b.logmag()));
}

// Calls fn on every label sequence of length n over k labels.
void for_each_sequence(std::size_t k, std::size_t n, const std::function<void(const LabelSequence&)>& fn) {
  LabelSequence seq(n, 0);
  for (;;) {
    fn(seq);
    std::size_t i = 0;
    while (i < n && seq[i] + 1 == k) seq[i++] = 0;
    if (i == n) return;
    ++seq[i];
  }
}

std::vector<double> random_alphas(RandomSource& rng, std::size_t k, double lo = 0.05, double hi = 5.0) {
  std::vector<double> a(k);
  for (double& v : a) v = uniform_in(rng, lo, hi);
  return a;
}

CrpParams random_infinite(RandomSource& rng) {
  const double alpha = rng.uniform();  // [0, 1)
  const double theta = -alpha + uniform_in(rng, 0.05, 5.0);
  return CrpParams::validate(alpha, theta);
}

CrpParams random_finite(RandomSource& rng) {
  const double step = uniform_in(rng, 0.1, 3.0);
  const auto k = 1 + static_cast<std::uint64_t>(rng.uniform() * 5.0);
  return CrpParams::validate(-step, step * static_cast<double>(k));
}

std::string describe(const CrpParams& p) { return "(" + fmt(p.alpha()) + "," + fmt(p.theta()) + ")"; }

// Partition of [n] induced by equal labels.
Partition induced_partition(const LabelSequence& seq) { return Partition::from_assignment(seq); }

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(std::span<const double> xs) {
  const auto n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

double ks_beta(std::vector<double> samples, double a, double b) {
  std::sort(samples.begin(), samples.end());
  return ks_stat(samples, [a, b](double x) { return beta_cdf(a, b, x); });
}

double ks_two(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return ks_two_sample_stat(a, b);
}

// tanh_sinh passes (x, xc) with xc the signed distance to the nearer endpoint;
// recover both gaps without cancellation.
struct Gaps {
  double left;
  double right;
};

Gaps gaps(double x, double xc, double a, double b) {
  if (xc < 0.0) return {-xc, (b - a) + xc};
  if (xc > 0.0) return {(b - a) - xc, xc};
  return {x - a, b - x};
}

// f * rho_k in log space, with 1 - sum(xs) supplied exactly. Near the origin
// rho alone overflows while the product stays finite.
double weighted_rho(const CrpParams& params, double fx, std::span<const double> xs, double slack) {
  if (fx == 0.0) return 0.0;
  if (!(slack > 0.0)) return 0.0;
  double log_points = 0.0;
  for (double x : xs) {
    if (!(x > 0.0)) return 0.0;
    log_points += std::log(x);
  }
  const auto kd = static_cast<double>(xs.size());
  const double log_rho = log_correlation_constant(params, xs.size()) + (-params.alpha() - 1.0) * log_points +
                         (kd * params.alpha() + params.theta() - 1.0) * std::log(slack);
  return std::copysign(std::exp(std::log(std::fabs(fx)) + log_rho), fx);
}

constexpr double kQuadratureTolerance = 1e-12;

double integrate(const std::function<double(double, double)>& f, double a, double b) {
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, kQuadratureTolerance);
}

// Integral of f(x, y) rho_2(x, y) over the open triangle x, y > 0, x + y < 1.
double integrate_rho2(const CrpParams& params, const std::function<double(double, double)>& f) {
  return integrate(
      [&](double x, double xc) {
        const double top = gaps(x, xc, 0.0, 1.0).right;
        if (!(x > 0.0) || !(top > 0.0)) return 0.0;
        thread_local boost::math::quadrature::tanh_sinh<double> inner;
        return inner.integrate(
            [&](double y, double yc) {
              const Gaps g = gaps(y, yc, 0.0, top);
              const double xs[2] = {x, g.left};
              return weighted_rho(params, f(x, g.left), xs, g.right);
            },
            0.0, top, kQuadratureTolerance);
      },
      0.0, 1.0);
}

// Integral of f(x) rho_1(x) over [a, b] within (0, 1).
double integrate_rho1(const CrpParams& params, const std::function<double(double)>& f, double a = 0.0, double b = 1.0) {
  return integrate(
      [&](double x, double xc) {
        const Gaps g = gaps(x, xc, a, b);
        const double xs[1] = {a + g.left};
        return weighted_rho(params, f(xs[0]), xs, (1.0 - b) + g.right);
      },
      a, b);
}

// ---------------------------------------------------------------- polya-exact

constexpr std::size_t kPolyaMaxN = 6;
constexpr std::size_t kPolyaMaxK = 3;
constexpr std::size_t kPolyaParamSets = 20;

std::vector<UrnParams> polya_param_sets(RandomSource& rng) {
  std::vector<UrnParams> out;
  for (std::size_t k = 1; k <= kPolyaMaxK; ++k) {
    for (std::size_t s = 0; s < kPolyaParamSets; ++s) out.emplace_back(random_alphas(rng, k));
  }
  return out;
}

void polya_oracle(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  double worst_abs = 0.0, worst_chain = 0.0, worst_mass = 0.0;
  for (const auto& params : polya_param_sets(rng)) {
    for (std::size_t n = 0; n <= kPolyaMaxN; ++n) {
      double mass = 0.0;
      for_each_sequence(params.k(), n, [&](const LabelSequence& seq) {
        const double closed = polya_seq_log_pmf(params, seq).to_real();
        worst_abs = std::max(worst_abs, std::fabs(closed - oracle_polya_seq_pmf(params, seq)));
        // chain of polya_next_probs along the sequence
        CountVector counts(params.k(), 0);
        double chain = 1.0;
        for (auto label : seq) {
          chain *= polya_next_probs(params, counts)[label];
          ++counts[label];
        }
        worst_chain = std::max(worst_chain, rel_diff(chain, closed));
        mass += closed;
      });
      worst_mass = std::max(worst_mass, std::fabs(mass - 1.0));
    }
  }
  const std::string scope = "n<=6, k<=3, 20 parameter sets per k";
  out.push_back(within("polya closed form vs sequential oracle (abs)", worst_abs, 1e-12, seed, scope));
  out.push_back(within("polya closed form vs next-prob chain (rel)", worst_chain, 1e-12, seed, scope));
  out.push_back(within("polya total mass", worst_mass, 1e-10, seed, scope));
}

void polya_exchangeability(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  double worst = 0.0;
  for (const auto& params : polya_param_sets(rng)) {
    for (std::size_t n = 0; n <= kPolyaMaxN; ++n) worst = std::max(worst, check_exchangeability_exact(params, n).statistic);
  }
  out.push_back(within("polya exact exchangeability", worst, 1e-12, seed, "max |log-pmf difference| over all rearrangements"));
}

void polya_count_law(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  double worst = 0.0, worst_mass = 0.0;
  for (const auto& params : polya_param_sets(rng)) {
    for (std::size_t n = 0; n <= kPolyaMaxN; ++n) {
      // Aggregate the sequence law by counts and compare with the count law.
      std::map<CountVector, double> by_counts;
      for_each_sequence(params.k(), n, [&](const LabelSequence& seq) {
        by_counts[count_labels(params.k(), seq)] += oracle_polya_seq_pmf(params, seq);
      });
      double mass = 0.0;
      for (const auto& [counts, p] : by_counts) {
        const double q = polya_count_log_pmf(params, counts).to_real();
        worst = std::max(worst, rel_diff(p, q));
        mass += q;
      }
      worst_mass = std::max(worst_mass, std::fabs(mass - 1.0));
    }
  }
  out.push_back(within("polya count law vs summed sequence law (rel)", worst, 1e-12, seed));
  out.push_back(within("polya count law total mass", worst_mass, 1e-10, seed));
}

void polya_sampler(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  const UrnParams params({1.0, 1.0});
  constexpr std::size_t n = 3, draws = 100000;
  std::vector<std::uint64_t> observed(8, 0);
  for (std::size_t r = 0; r < draws; ++r) {
    const LabelSequence seq = polya_sample(params, n, rng);
    ++observed[seq[0] + 2 * seq[1] + 4 * seq[2]];
  }
  std::vector<double> expected;
  for (std::size_t code = 0; code < 8; ++code) {
    const LabelSequence seq{static_cast<std::uint32_t>(code & 1), static_cast<std::uint32_t>((code >> 1) & 1),
                            static_cast<std::uint32_t>((code >> 2) & 1)};
    expected.push_back(polya_seq_log_pmf(params, seq).to_real());
  }
  const Bins bins = merge_small_bins(observed, expected, draws);
  out.push_back(within("polya sampler chi-square over 8 sequences", chi_square_stat(bins.observed, bins.expected_probs, draws),
                       chi_square_critical(bins.observed.size() - 1), seed, "params=(1,1) n=3 N=1e5"));
}

void polya_control(std::uint64_t seed, std::vector<TestReport>& out) {
  const UrnParams params({1.0, 2.0, 3.0});
  const SeqLogPmf corrupted = [](const UrnParams& p, std::span<const std::uint32_t> seq) {
    SignedLogValue v = polya_seq_log_pmf(p, seq);
    double shift = 0.0;
    for (std::size_t t = 0; t < seq.size(); ++t) shift += 1e-3 * static_cast<double>(t * seq[t]);
    return v * SignedLogValue(1, shift);
  };
  const TestReport r = check_exchangeability_exact(params, 4, corrupted);
  out.push_back(rejects("control: position-dependent pmf is not exchangeable", r.statistic, r.threshold, seed, r.details));
}

// ------------------------------------------------------------------ crp-exact

constexpr std::size_t kCrpMaxN = 8;
constexpr std::size_t kCrpParamSets = 10;

std::vector<CrpParams> crp_param_sets(RandomSource& rng, std::size_t per_case) {
  std::vector<CrpParams> out;
  for (std::size_t s = 0; s < per_case; ++s) out.push_back(random_infinite(rng));
  for (std::size_t s = 0; s < per_case; ++s) out.push_back(random_finite(rng));
  return out;
}

void crp_oracle(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  double worst_abs = 0.0, worst_rel = 0.0, worst_mass = 0.0;
  std::size_t zero_violations = 0, checked = 0;
  for (const auto& params : crp_param_sets(rng, kCrpParamSets)) {
    for (std::size_t n = 1; n <= kCrpMaxN; ++n) {
      double mass = 0.0;
      for (const auto& pi : enumerate_partitions(n)) {
        const SignedLogValue ep = ewens_pitman_log_pmf(params, pi);
        const double closed = ep.to_real();
        const double oracle = oracle_crp_partition_pmf(params, pi);
        worst_abs = std::max(worst_abs, std::fabs(closed - oracle));
        worst_rel = std::max(worst_rel, rel_diff(closed, oracle));
        mass += closed;
        if (params.finite_blocks() && pi.num_blocks() > params.max_blocks()) {
          ++checked;
          if (!ep.is_zero()) ++zero_violations;
        }
        if (ep.sign() < 0) ++zero_violations;
      }
      worst_mass = std::max(worst_mass, std::fabs(mass - 1.0));
    }
  }
  const std::string scope = "all partitions n<=8, 10 parameter sets per case";
  out.push_back(within("ewens-pitman vs seating-history oracle (abs)", worst_abs, 1e-12, seed, scope));
  out.push_back(within("ewens-pitman vs seating-history oracle (rel)", worst_rel, 1e-12, seed, scope));
  out.push_back(within("ewens-pitman total mass", worst_mass, 1e-10, seed, scope));
  out.push_back(within("finite case: exact zero beyond k blocks (violations)", static_cast<double>(zero_violations), 0.0,
                       seed, std::to_string(checked) + " over-capacity partitions checked"));
}

void crp_exchangeability(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  double worst = 0.0;
  for (const auto& params : crp_param_sets(rng, 5)) {
    for (std::size_t n = 1; n <= 6; ++n) {
      std::vector<std::uint32_t> perm(n);
      for (const auto& pi : enumerate_partitions(n)) {
        const SignedLogValue ref = ewens_pitman_log_pmf(params, pi);
        std::iota(perm.begin(), perm.end(), 0u);
        do {
          std::vector<std::uint32_t> relabeled(n);
          for (std::size_t i = 0; i < n; ++i) relabeled[perm[i]] = pi.block_of(i);
          worst = std::max(worst, rel_diff(ewens_pitman_log_pmf(params, Partition::from_assignment(relabeled)), ref));
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
  }
  out.push_back(within("ewens-pitman invariance under relabeling", worst, 1e-12, seed, "all permutations, n<=6"));
}

// CRP(-u, K u) against the partition law induced by a K-label urn with equal
// weights u, summed over label assignments.
double case1_discrepancy(double u, std::uint32_t groups, std::size_t max_n) {
  const CrpParams crp = CrpParams::validate(-u, u * groups);
  const UrnParams urn(std::vector<double>(groups, u));
  double worst = 0.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::map<std::vector<std::uint32_t>, double> induced;
    for_each_sequence(groups, n, [&](const LabelSequence& seq) {
      const Partition p = induced_partition(seq);
      std::vector<std::uint32_t> key(p.assignment().begin(), p.assignment().end());
      induced[key] += polya_seq_log_pmf(urn, seq).to_real();
    });
    for (const auto& pi : enumerate_partitions(n)) {
      std::vector<std::uint32_t> key(pi.assignment().begin(), pi.assignment().end());
      const auto it = induced.find(key);
      const double from_urn = it == induced.end() ? 0.0 : it->second;
      worst = std::max(worst, std::fabs(from_urn - ewens_pitman_log_pmf(crp, pi).to_real()));
    }
  }
  return worst;
}

void crp_case1(std::uint64_t seed, std::vector<TestReport>& out) {
  out.push_back(within("finite case (-1,2) equals urn (1,1) partition law", case1_discrepancy(1.0, 2, 6), 1e-10, seed, "n<=6"));
  out.push_back(within("finite case (-0.5,1.5) equals urn (0.5,0.5,0.5) partition law", case1_discrepancy(0.5, 3, 6), 1e-10,
                       seed, "n<=6"));
}

void crp_sampler(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  {
    const CrpParams params = CrpParams::validate(0.5, 0.5);
    constexpr std::size_t n = 4, draws = 100000;
    const auto parts = enumerate_partitions(n);
    std::map<std::vector<std::uint32_t>, std::size_t> index;
    std::vector<double> expected;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      index[{parts[i].assignment().begin(), parts[i].assignment().end()}] = i;
      expected.push_back(ewens_pitman_log_pmf(params, parts[i]).to_real());
    }
    std::vector<std::uint64_t> observed(parts.size(), 0);
    for (std::size_t r = 0; r < draws; ++r) {
      const Partition p = crp_sample(params, n, rng);
      ++observed[index.at({p.assignment().begin(), p.assignment().end()})];
    }
    const Bins bins = merge_small_bins(observed, expected, draws);
    out.push_back(within("crp sampler chi-square over partitions of [4]",
                         chi_square_stat(bins.observed, bins.expected_probs, draws), chi_square_critical(bins.observed.size() - 1),
                         seed, "params=(0.5,0.5) N=1e5"));
  }
  {
    const CrpParams params = CrpParams::validate(-1.0, 2.0);
    std::size_t worst = 0;
    for (std::size_t r = 0; r < 100000; ++r) worst = std::max(worst, crp_sample(params, 10, rng).num_blocks());
    out.push_back(within("finite case sampler never exceeds k blocks", static_cast<double>(worst), 2.0, seed,
                         "params=(-1,2) n=10 N=1e5; statistic = max blocks seen"));
  }
  {
    const CrpParams params = CrpParams::validate(1.0, 0.5);
    std::size_t non_singleton = 0;
    for (std::size_t r = 0; r < 1000; ++r) {
      if (crp_sample(params, 20, rng).num_blocks() != 20) ++non_singleton;
    }
    std::vector<std::uint32_t> singles(6);
    std::iota(singles.begin(), singles.end(), 0u);
    const double p_singletons = ewens_pitman_log_pmf(params, Partition::from_assignment(singles)).to_real();
    out.push_back(within("alpha=1 yields only singletons", static_cast<double>(non_singleton) + std::fabs(p_singletons - 1.0),
                         1e-12, seed, "sampler n=20 x1000 and exact pmf at n=6"));
  }
}

void crp_control(std::uint64_t seed, std::vector<TestReport>& out) {
  // Seating oracle at (0.5, 0.5) against the closed form at a different theta.
  const CrpParams right = CrpParams::validate(0.5, 0.5);
  const CrpParams wrong = CrpParams::validate(0.5, 0.6);
  double worst = 0.0;
  for (const auto& pi : enumerate_partitions(6)) {
    worst = std::max(worst, std::fabs(ewens_pitman_log_pmf(wrong, pi).to_real() - oracle_crp_partition_pmf(right, pi)));
  }
  out.push_back(rejects("control: oracle disagrees with a mismatched law", worst, 1e-12, seed));
}

// --------------------------------------------------------------------- limits

void limits_alpha(std::uint64_t seed, std::vector<TestReport>& out) {
  double worst = 0.0;
  for (double theta : {0.3, 1.0, 2.5}) {
    const CrpParams near = CrpParams::validate(1e-8, theta);
    for (const auto& pi : enumerate_partitions(6)) {
      worst = std::max(worst, rel_diff(ewens_pitman_log_pmf(near, pi), ewens_log_pmf(theta, pi)));
    }
  }
  out.push_back(within("alpha=1e-8 matches Ewens formula (rel)", worst, 1e-6, seed, "theta in {0.3,1,2.5}, partitions of [6]"));
}

void limits_theta(std::uint64_t seed, std::vector<TestReport>& out) {
  double worst = 0.0;
  for (double alpha : {0.2, 0.5, 0.9}) {
    const CrpParams near = CrpParams::validate(alpha, 1e-8);
    for (const auto& pi : enumerate_partitions(6)) {
      worst = std::max(worst, rel_diff(ewens_pitman_log_pmf(near, pi), theta_zero_log_pmf(alpha, pi)));
    }
  }
  out.push_back(within("theta=1e-8 matches theta=0 formula (rel)", worst, 1e-6, seed, "alpha in {0.2,0.5,0.9}, partitions of [6]"));
}

void limits_gamma_ratio(std::uint64_t seed, std::vector<TestReport>& out) {
  struct Case {
    double m, r, s, tol;
  };
  // Relative error of m^(r-s) against the exact ratio, each against its own bound.
  const Case cases[] = {{10.0, 1.0, 0.0, 1e-12}, {100.0, 0.5, 0.0, 2e-3}, {1e6, 0.5, -0.5, 1e-6}};
  double worst = 0.0;
  for (const auto& c : cases) {
    const double err = std::fabs(std::exp(log_gamma_ratio(c.m, c.r, c.s)) / gamma_ratio_asymptotic(c.m, c.r, c.s) - 1.0);
    worst = std::max(worst, err / c.tol);
  }
  double previous = HUGE_VAL;
  bool monotone = true;
  for (double m = 10.0; m <= 1e7; m *= 10.0) {
    const double err = std::fabs(std::expm1(log_gamma_ratio(m, 0.5, 0.0) - std::log(gamma_ratio_asymptotic(m, 0.5, 0.0))));
    monotone = monotone && err < previous;
    previous = err;
  }
  out.push_back(within("gamma ratio asymptotic (error / bound)", monotone ? worst : HUGE_VAL, 1.0, seed,
                       "(10,1,0)<1e-12, (100,.5,0)<2e-3, (1e6,.5,-.5)<1e-6, error shrinking in m"));
}

void limits_control(std::uint64_t seed, std::vector<TestReport>& out) {
  double worst = 0.0;
  const CrpParams far = CrpParams::validate(0.05, 1.0);
  for (const auto& pi : enumerate_partitions(6)) {
    worst = std::max(worst, rel_diff(ewens_pitman_log_pmf(far, pi), ewens_log_pmf(1.0, pi)));
  }
  out.push_back(rejects("control: alpha=0.05 is not the Ewens limit", worst, 1e-6, seed));
}

// ------------------------------------------------------------------ dirichlet

std::vector<double> polya_proportions(const UrnParams& params, std::size_t n, std::size_t reps, RandomSource& rng) {
  std::vector<double> props(reps);
  for (auto& p : props) p = static_cast<double>(polya_sample_counts(params, n, rng)[0]) / static_cast<double>(n);
  return props;
}

void dirichlet_limit(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  constexpr std::size_t n = 2000, reps = 10000;
  const auto props = polya_proportions(UrnParams({2.0, 3.0}), n, reps, rng);
  out.push_back(within("urn (2,3) proportion at n=2000 vs Beta(2,3) KS", ks_beta(props, 2.0, 3.0), ks_critical(reps), seed,
                       "N=1e4"));
}

void dirichlet_constructions(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  constexpr std::size_t draws = 10000;
  for (int v = 0; v < 5; ++v) {
    const std::size_t k = 2 + static_cast<std::size_t>(rng.uniform() * 3.0);
    const auto alphas = random_alphas(rng, k, 0.2, 5.0);
    std::vector<std::vector<double>> by_gamma(k), by_stick(k);
    for (std::size_t r = 0; r < draws; ++r) {
      const auto g = sample_dirichlet_gamma(alphas, rng);
      const auto s = sample_dirichlet_stick(alphas, rng);
      for (std::size_t i = 0; i < k; ++i) {
        by_gamma[i].push_back(g[i]);
        by_stick[i].push_back(s[i]);
      }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < k; ++i) worst = std::max(worst, ks_two(by_gamma[i], by_stick[i]));
    std::string desc = "alphas=(";
    for (std::size_t i = 0; i < k; ++i) desc += (i ? "," : "") + fmt(alphas[i]);
    out.push_back(within("gamma vs stick construction, coordinate-wise two-sample KS", worst,
                         ks_two_sample_critical(draws, draws), seed, desc + ") N=1e4"));
  }
}

void dirichlet_aggregation(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  constexpr std::size_t draws = 10000;
  const std::vector<double> alphas{1.0, 1.0, 1.0};
  const std::vector<std::vector<std::size_t>> blocks{{0, 1}, {2}};
  std::vector<double> first(draws);
  for (auto& f : first) f = aggregate_simplex(sample_dirichlet_gamma(alphas, rng), blocks)[0];
  out.push_back(within("aggregated Dir(1,1,1) by {{1,2},{3}} vs Beta(2,1) KS", ks_beta(first, 2.0, 1.0), ks_critical(draws),
                       seed, "N=1e4"));
}

void dirichlet_neutrality(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  constexpr std::size_t draws = 100000;
  const std::vector<double> alphas{1.0, 2.0, 3.0};
  const std::size_t subset[] = {0, 1};
  std::vector<double> renorm(draws), rest(draws);
  for (std::size_t r = 0; r < draws; ++r) {
    const auto x = sample_dirichlet_gamma(alphas, rng);
    renorm[r] = normalize_subvector(x, subset)[0];
    rest[r] = x[2];
  }
  const auto a = mean_se(renorm);
  const auto b = mean_se(rest);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t r = 0; r < draws; ++r) {
    cov += (renorm[r] - a.mean) * (rest[r] - b.mean);
    va += (renorm[r] - a.mean) * (renorm[r] - a.mean);
    vb += (rest[r] - b.mean) * (rest[r] - b.mean);
  }
  const double corr = cov / std::sqrt(va * vb);
  out.push_back(within("neutrality: |corr(renormalized x_1, x_3)|", std::fabs(corr), 0.02, seed, "Dir(1,2,3) I=(1,2) N=1e5"));
  out.push_back(within("neutrality: renormalized subvector vs Beta(1,2) KS", ks_beta(renorm, 1.0, 2.0), ks_critical(draws), seed,
                       "N=1e5"));
}

void dirichlet_marginals(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  constexpr std::size_t draws = 10000;
  const std::vector<double> alphas{2.0, 3.0};
  std::vector<double> first(draws);
  for (auto& f : first) f = sample_dirichlet_stick(alphas, rng)[0];
  out.push_back(within("stick construction (2,3) first coordinate vs Beta(2,3) KS", ks_beta(first, 2.0, 3.0),
                       ks_critical(draws), seed, "N=1e4"));

  std::vector<double> uniform(draws);
  for (auto& u : uniform) u = sample_beta(1.0, 1.0, rng);
  out.push_back(within("Beta(1,1) vs Uniform(0,1) KS", ks_beta(uniform, 1.0, 1.0), ks_critical(draws), seed, "N=1e4"));

  constexpr std::size_t gamma_draws = 100000;
  std::vector<double> g(gamma_draws);
  for (auto& v : g) v = sample_gamma(2.0, rng);
  const auto m = mean_se(g);
  double m2 = 0.0, m4 = 0.0;
  for (double v : g) {
    const double d = (v - m.mean) * (v - m.mean);
    m2 += d;
    m4 += d * d;
  }
  m2 /= gamma_draws;
  m4 /= gamma_draws;
  const double var_se = std::sqrt((m4 - m2 * m2) / gamma_draws);
  const double z = std::max(std::fabs(m.mean - 2.0) / m.se, std::fabs(m2 - 2.0) / var_se);
  out.push_back(within("Gamma(2) mean and variance (z-score)", z, 3.0, seed, "N=1e5"));
}

void dirichlet_control(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  constexpr std::size_t reps = 2000;
  const auto props = polya_proportions(UrnParams({2.0, 3.0}), 500, reps, rng);
  out.push_back(rejects("control: urn (2,3) proportion vs Beta(3,2) KS", ks_beta(props, 3.0, 2.0), ks_critical(reps), seed));
}

// ------------------------------------------------------------------------ gem

void gem_means(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  constexpr std::size_t draws = 100000, depth = 5;
  const CrpParams params = CrpParams::validate(0.0, 1.0);
  std::vector<std::vector<double>> v(depth, std::vector<double>(draws));
  std::vector<double> residual(draws);
  bool monotone = true;
  for (std::size_t r = 0; r < draws; ++r) {
    const auto w = gem_sample(params, depth, rng);
    double left = 1.0;
    for (std::size_t j = 0; j < depth; ++j) {
      v[j][r] = w.weights[j];
      const double next = left - w.weights[j];
      monotone = monotone && next <= left;
      left = next;
    }
    residual[r] = w.residual;
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < depth; ++j) {
    const auto m = mean_se(v[j]);
    worst = std::max(worst, std::fabs(m.mean - std::ldexp(1.0, -static_cast<int>(j + 1))) / m.se);
  }
  out.push_back(within("GEM(0,1): E[V_k] = 2^-k, k<=5 (max z)", worst, 3.0, seed, "N=1e5"));
  const auto res = mean_se(residual);
  const double z_res = std::fabs(res.mean - std::ldexp(1.0, -static_cast<int>(depth))) / res.se;
  out.push_back(within("GEM(0,1): mean residual at depth 5 = 2^-5 (z)", monotone ? z_res : HUGE_VAL, 3.0, seed,
                       "residual non-increasing in depth"));

  const CrpParams pd = CrpParams::validate(0.5, 0.5);
  std::vector<double> v1(draws);
  for (auto& x : v1) x = gem_sample(pd, 1, rng).weights[0];
  const auto m1 = mean_se(v1);
  out.push_back(within("GEM(0.5,0.5): E[V_1] = 1/3 (z)", std::fabs(m1.mean - 1.0 / 3.0) / m1.se, 3.0, seed, "N=1e5"));
}

std::vector<double> crp_first_weights(const CrpParams& params, std::size_t n, std::size_t reps, RandomSource& rng) {
  std::vector<double> v1(reps);
  for (auto& x : v1) x = empirical_block_weights(crp_sample(params, n, rng)).weights[0];
  return v1;
}

void gem_crp_first_block(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  constexpr std::size_t reps = 10000;
  const CrpParams params = CrpParams::validate(0.5, 0.5);
  const auto v1 = crp_first_weights(params, 5000, reps, rng);
  out.push_back(within("CRP(0.5,0.5) V_1 at n=5000 vs Beta(0.5,1) KS", ks_beta(v1, 0.5, 1.0), ks_critical(reps), seed, "N=1e4"));
}

void gem_ranked(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  constexpr std::size_t reps = 10000;
  const CrpParams params = CrpParams::validate(0.0, 1.0);
  std::vector<double> from_gem(reps), from_crp(reps);
  for (auto& s : from_gem) s = rank_weights(gem_sample(params, 50, rng)).weights[0];
  for (auto& s : from_crp) s = rank_weights(empirical_block_weights(crp_sample(params, 5000, rng))).weights[0];
  out.push_back(within("PD(0,1) S_1: ranked GEM(depth 50) vs ranked CRP(n=5000) two-sample KS", ks_two(from_gem, from_crp),
                       ks_two_sample_critical(reps, reps), seed, "N=1e4"));
}

void gem_control(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  constexpr std::size_t reps = 2000;
  const auto v1 = crp_first_weights(CrpParams::validate(0.5, 0.5), 1000, reps, rng);
  out.push_back(rejects("control: CRP(0.5,0.5) V_1 vs Beta(0.5,0.5) KS", ks_beta(v1, 0.5, 0.5), ks_critical(reps), seed));
}

// ---------------------------------------------------------------- correlation

void correlation_quadrature(std::uint64_t seed, std::vector<TestReport>& out) {
  double worst_first = 0.0, worst_second = 0.0;
  for (double theta : {0.5, 1.0, 2.0}) {
    const CrpParams p = CrpParams::validate(0.0, theta);
    worst_first = std::max(worst_first, std::fabs(integrate_rho1(p, [](double x) { return x; }) - 1.0));
    worst_second = std::max(worst_second, std::fabs(integrate_rho1(p, [](double x) { return x * x; }) - 1.0 / (1.0 + theta)));
  }
  out.push_back(within("PD(0,theta): integral of x rho_1 = 1", worst_first, 1e-8, seed, "theta in {0.5,1,2}"));
  out.push_back(within("PD(0,theta): integral of x^2 rho_1 = 1/(1+theta)", worst_second, 1e-8, seed, "theta in {0.5,1,2}"));

  double worst_general = 0.0;
  for (auto [alpha, theta] : {std::pair{0.5, 0.5}, std::pair{0.3, 1.2}, std::pair{0.7, -0.4}, std::pair{0.4, 0.0}}) {
    const CrpParams p = CrpParams::validate(alpha, theta);
    worst_general = std::max(worst_general, std::fabs(integrate_rho1(p, [](double x) { return x; }) - 1.0));
    worst_general = std::max(worst_general, std::fabs(integrate_rho1(p, [](double x) { return x * x; }) -
                                                      (1.0 - alpha) / (1.0 + theta)));
  }
  out.push_back(within("PD(alpha,theta): x and x^2 moments of rho_1", worst_general, 1e-7, seed,
                       "(0.5,0.5) (0.3,1.2) (0.7,-0.4) (0.4,0)"));
}

void correlation_mc(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  constexpr std::size_t n = 5000, reps = 10000;
  for (auto [alpha, theta] : {std::pair{0.0, 1.0}, std::pair{0.5, 0.5}}) {
    const CrpParams p = CrpParams::validate(alpha, theta);
    const std::string tag = describe(p);

    const auto square = [](double x) { return x * x; };
    const double target1 = integrate_rho1(p, square);
    const McEstimate mc1 = correlation_mc_estimate(p, CorrelationFn1(square), n, reps, rng);
    out.push_back(within("MC sum f(S_i), f=x^2 vs integral of f rho_1 " + tag, std::fabs(mc1.estimate - target1) / mc1.std_error,
                         3.0, seed, "estimate=" + fmt(mc1.estimate) + " integral=" + fmt(target1)));

    const auto product = [](double x, double y) { return x * y; };
    const double target2 = integrate_rho2(p, product);
    const McEstimate mc2 = correlation_mc_estimate(p, CorrelationFn2(product), n, reps, rng);
    out.push_back(within("MC sum_{i!=j} f(S_i,S_j), f=xy vs integral of f rho_2 " + tag,
                         std::fabs(mc2.estimate - target2) / mc2.std_error, 3.0, seed,
                         "estimate=" + fmt(mc2.estimate) + " integral=" + fmt(target2)));
  }
  const CrpParams p = CrpParams::validate(0.5, 0.5);
  const auto window = [](double x) { return (x >= 0.2 && x <= 0.4) ? x : 0.0; };
  const double target = integrate_rho1(p, [](double x) { return x; }, 0.2, 0.4);
  const McEstimate mc = correlation_mc_estimate(p, CorrelationFn1(window), n, reps, rng);
  out.push_back(within("MC sum f(S_i), f=x 1[0.2,0.4] vs integral of f rho_1 (0.5,0.5)",
                       std::fabs(mc.estimate - target) / mc.std_error, 3.0, seed,
                       "estimate=" + fmt(mc.estimate) + " integral=" + fmt(target)));
}

// E[# ordered k-tuples of distinct blocks with the given sizes] / k! by
// enumeration, weighted by the seating-history oracle.
double block_count_by_enumeration(const CrpParams& params, std::size_t n, const std::vector<std::uint64_t>& sizes) {
  double total = 0.0;
  for (const auto& pi : enumerate_partitions(n)) {
    const auto& bs = pi.block_sizes();
    std::vector<bool> used(bs.size(), false);
    std::function<double(std::size_t)> count = [&](std::size_t pos) -> double {
      if (pos == sizes.size()) return 1.0;
      double c = 0.0;
      for (std::size_t b = 0; b < bs.size(); ++b) {
        if (used[b] || bs[b] != sizes[pos]) continue;
        used[b] = true;
        c += count(pos + 1);
        used[b] = false;
      }
      return c;
    };
    total += oracle_crp_partition_pmf(params, pi) * count(0);
  }
  return total / std::tgamma(static_cast<double>(sizes.size()) + 1.0);
}

void correlation_block_count(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  std::vector<CrpParams> sets;
  for (int s = 0; s < 6; ++s) sets.push_back(random_infinite(rng));
  sets.push_back(CrpParams::validate(0.0, 1.3));
  sets.push_back(CrpParams::validate(0.6, 0.0));
  sets.push_back(CrpParams::validate(-1.0, 3.0));
  double worst = 0.0;
  for (const auto& params : sets) {
    for (std::size_t n = 1; n <= 6; ++n) {
      // every ordered size list of length 1..3 with sum <= n
      std::vector<std::uint64_t> sizes;
      std::function<void(std::size_t)> rec = [&](std::size_t left) {
        if (!sizes.empty()) {
          worst = std::max(worst, std::fabs(block_count_prob(params, n, sizes) - block_count_by_enumeration(params, n, sizes)));
        }
        if (sizes.size() == 3) return;
        for (std::uint64_t s = 1; s <= left; ++s) {
          sizes.push_back(s);
          rec(left - s);
          sizes.pop_back();
        }
      };
      rec(n);
    }
  }
  out.push_back(within("block_count_prob vs enumeration expectation", worst, 1e-10, seed,
                       "n<=6, up to 3 sizes, 6 random + alpha=0, theta=0 and finite-case params"));
}

void correlation_symmetry(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const CrpParams p = random_infinite(rng);
    const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * 4.0);
    std::vector<double> xs(k);
    for (auto& x : xs) x = uniform_in(rng, 0.01, 0.9 / static_cast<double>(k));
    const double ref = rho_k(p, xs);
    std::sort(xs.begin(), xs.end());
    do {
      worst = std::max(worst, rel_diff(rho_k(p, xs), ref));
    } while (std::next_permutation(xs.begin(), xs.end()));
  }
  out.push_back(within("rho_k symmetric under permutation (rel)", worst, 1e-12, seed, "200 random (params, xs), k<=4"));
}

void correlation_control(std::uint64_t seed, std::vector<TestReport>& out) {
  RandomSource rng(seed);
  const CrpParams p = CrpParams::validate(0.5, 0.5);
  const auto square = [](double x) { return x * x; };
  const McEstimate mc = correlation_mc_estimate(p, CorrelationFn1(square), 2000, 1000, rng);
  const double wrong = 1.0 / (1.0 + p.theta());  // the alpha = 0 value
  out.push_back(rejects("control: PD(0.5,0.5) second moment vs the alpha=0 value", std::fabs(mc.estimate - wrong) / mc.std_error,
                        3.0, seed));
}

// ----------------------------------------------------------------- registry

struct Suite {
  std::string name;
  std::vector<Check> checks;
};

const std::vector<Suite>& registry() {
  static const std::vector<Suite> suites = {
      {"polya-exact", {polya_oracle, polya_exchangeability, polya_count_law, polya_sampler, polya_control}},
      {"crp-exact", {crp_oracle, crp_exchangeability, crp_case1, crp_sampler, crp_control}},
      {"limits", {limits_alpha, limits_theta, limits_gamma_ratio, limits_control}},
      {"dirichlet",
       {dirichlet_limit, dirichlet_constructions, dirichlet_aggregation, dirichlet_neutrality, dirichlet_marginals,
        dirichlet_control}},
      {"gem", {gem_means, gem_crp_first_block, gem_ranked, gem_control}},
      {"correlation",
       {correlation_quadrature, correlation_mc, correlation_block_count, correlation_symmetry, correlation_control}},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : registry()) v.push_back(s.name);
    return v;
  }();
  return names;
}

std::vector<TestReport> run_suite(std::string_view name, std::uint64_t seed) {
  for (const auto& suite : registry()) {
    if (suite.name != name) continue;
    std::vector<TestReport> reports;
    for (std::size_t i = 0; i < suite.checks.size(); ++i) suite.checks[i](derive_seed(seed, i), reports);
    return reports;
  }
  fail(Errc::UnknownSuite, "unknown suite '" + std::string(name) + "'");
}

}  // namespace exch
