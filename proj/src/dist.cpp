// SPDX-License-Identifier: Apache-2.0

#include "exch/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "exch/error.hpp"

namespace exch {
namespace {

void require_shape(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    fail(Errc::InvalidParameter, std::string(what) + " must be positive and finite, got " + std::to_string(v));
  }
}

void require_alphas(std::span<const double> alphas) {
  if (alphas.empty()) fail(Errc::InvalidParameter, "dirichlet: need at least one alpha");
  for (double a : alphas) require_shape(a, "dirichlet alpha");
}

// Marsaglia & Tsang for shape >= 1, returning log of the draw.
double log_gamma_mt(double shape, RandomSource& rng) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d * v);
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d * v);
  }
}

}  // namespace

SimplexVector::SimplexVector(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.empty()) fail(Errc::InvalidParameter, "simplex: empty weight vector");
  double sum = 0.0;
  for (double w : w_) {
    if (!(w >= 0.0) || !std::isfinite(w)) fail(Errc::InvalidParameter, "simplex: weights must be finite and >= 0");
    sum += w;
  }
  const double tol = kSumTolerance * std::max(1.0, static_cast<double>(w_.size()) / 1000.0);
  if (std::fabs(sum - 1.0) > tol) {
    fail(Errc::InvalidParameter, "simplex: weights sum to " + std::to_string(sum) + ", not 1");
  }
}

double sample_log_gamma(double shape, RandomSource& rng) {
  require_shape(shape, "gamma shape");
  if (shape >= 1.0) return log_gamma_mt(shape, rng);
  // G(a) = G(a + 1) * U^(1/a)
  const double boosted = log_gamma_mt(shape + 1.0, rng);
  return boosted + std::log(rng.uniform_open()) / shape;
}

double sample_gamma(double shape, RandomSource& rng) { return std::exp(sample_log_gamma(shape, rng)); }

double sample_beta(double a, double b, RandomSource& rng) {
  require_shape(a, "beta a");
  require_shape(b, "beta b");
  const double la = sample_log_gamma(a, rng);
  const double lb = sample_log_gamma(b, rng);
  // Z_a / (Z_a + Z_b) = 1 / (1 + exp(lb - la))
  return 1.0 / (1.0 + std::exp(lb - la));
}

SimplexVector sample_dirichlet_gamma(std::span<const double> alphas, RandomSource& rng) {
  require_alphas(alphas);
  std::vector<double> logs(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) logs[i] = sample_log_gamma(alphas[i], rng);
  const double top = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (double& l : logs) {
    l = std::exp(l - top);
    sum += l;
  }
  for (double& l : logs) l /= sum;
  return SimplexVector(std::move(logs));
}

SimplexVector sample_dirichlet_stick(std::span<const double> alphas, RandomSource& rng) {
  require_alphas(alphas);
  const std::size_t k = alphas.size();
  std::vector<double> tail(k + 1, 0.0);
  for (std::size_t i = k; i-- > 0;) tail[i] = tail[i + 1] + alphas[i];

  std::vector<double> x(k);
  double remaining = 1.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const double w = sample_beta(alphas[i], tail[i + 1], rng);
    x[i] = w * remaining;
    remaining *= 1.0 - w;
  }
  x[k - 1] = remaining;
  return SimplexVector(std::move(x));
}

std::size_t sample_categorical(const SimplexVector& weights, RandomSource& rng) {
  const double u = rng.uniform();
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    cum += weights[i];
    if (u < cum) return i;
  }
  return last_positive;
}

}  // namespace exch
