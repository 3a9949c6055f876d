// SPDX-License-Identifier: Apache-2.0

#include "exch/numkern.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "exch/error.hpp"

namespace exch {
namespace {

// Above this many factors a positive-argument rising factorial switches from
// summing logs to a log-gamma difference.
constexpr std::uint64_t kProductCutoff = 64;

}  // namespace

SignedLogValue SignedLogValue::from_real(double x) {
  if (x == 0.0) return zero();
  return {x > 0 ? 1 : -1, std::log(std::fabs(x))};
}

double SignedLogValue::to_real() const {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(logmag_);
}

SignedLogValue& SignedLogValue::operator*=(const SignedLogValue& rhs) {
  sign_ *= rhs.sign_;
  logmag_ = sign_ == 0 ? 0.0 : logmag_ + rhs.logmag_;
  return *this;
}

SignedLogValue& SignedLogValue::operator/=(const SignedLogValue& rhs) {
  if (rhs.sign_ == 0) fail(Errc::Domain, "SignedLogValue: division by zero");
  sign_ *= rhs.sign_;
  logmag_ = sign_ == 0 ? 0.0 : logmag_ - rhs.logmag_;
  return *this;
}

SignedLogValue rising(double x, std::uint64_t n) {
  if (n == 0) return SignedLogValue::one();
  if (x > 0.0 && n > kProductCutoff) {
    return {1, std::lgamma(x + static_cast<double>(n)) - std::lgamma(x)};
  }
  int sign = 1;
  double logmag = 0.0;
  for (std::uint64_t j = 0; j < n; ++j) {
    const double factor = x + static_cast<double>(j);
    if (factor == 0.0) return SignedLogValue::zero();
    if (factor < 0.0) sign = -sign;
    logmag += std::log(std::fabs(factor));
  }
  return {sign, logmag};
}

SignedLogValue falling(double x, std::uint64_t n) {
  const SignedLogValue r = rising(-x, n);
  return (n % 2 == 0) ? r : -r;
}

double log_factorial(std::uint64_t m) { return std::lgamma(static_cast<double>(m) + 1.0); }

SignedLogValue gen_binom(double x, std::uint64_t m) {
  return falling(x, m) / SignedLogValue(1, log_factorial(m));
}

namespace {

void check_gamma_args(double m, double r, double s) {
  if (!(m > 0.0) || !(m + r > 0.0) || !(m + s > 0.0)) {
    std::ostringstream msg;
    msg << "gamma ratio: arguments must be positive (m=" << m << ", m+r=" << m + r << ", m+s=" << m + s << ")";
    fail(Errc::Domain, msg.str());
  }
}

}  // namespace

double gamma_ratio_asymptotic(double m, double r, double s) {
  check_gamma_args(m, r, s);
  return std::pow(m, r - s);
}

double log_gamma_ratio(double m, double r, double s) {
  check_gamma_args(m, r, s);
  return std::lgamma(m + r) - std::lgamma(m + s);
}

}  // namespace exch
