// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace exch {

// A real number stored as sign and natural log of its magnitude. Products of
// factorial-type terms with negative bases stay exact in sign and never
// overflow. sign == 0 is exactly zero and logmag is then meaningless.
class SignedLogValue {
 public:
  constexpr SignedLogValue() = default;
  constexpr SignedLogValue(int sign, double logmag) : sign_(sign), logmag_(sign == 0 ? 0.0 : logmag) {}

  static constexpr SignedLogValue zero() { return {0, 0.0}; }
  static constexpr SignedLogValue one() { return {1, 0.0}; }
  static SignedLogValue from_real(double x);

  int sign() const noexcept { return sign_; }
  double logmag() const noexcept { return logmag_; }
  bool is_zero() const noexcept { return sign_ == 0; }
  double to_real() const;

  SignedLogValue operator-() const { return {-sign_, logmag_}; }
  SignedLogValue& operator*=(const SignedLogValue& rhs);
  // Division by zero is a domain error.
  SignedLogValue& operator/=(const SignedLogValue& rhs);

  friend SignedLogValue operator*(SignedLogValue a, const SignedLogValue& b) { return a *= b; }
  friend SignedLogValue operator/(SignedLogValue a, const SignedLogValue& b) { return a /= b; }

 private:
  int sign_ = 0;
  double logmag_ = 0.0;
};

/// x(x+1)...(x+n-1); one for n == 0.
SignedLogValue rising(double x, std::uint64_t n);

/// x(x-1)...(x-n+1), evaluated as (-1)^n rising(-x, n).
SignedLogValue falling(double x, std::uint64_t n);

/// Generalized binomial coefficient falling(x, m) / m!.
SignedLogValue gen_binom(double x, std::uint64_t m);

/// log(m!) for the multinomial and binomial normalisers.
double log_factorial(std::uint64_t m);

// Leading-order behaviour of Gamma(m+r)/Gamma(m+s) for large m, i.e. m^(r-s).
// Requires m, m+r, m+s all positive.
double gamma_ratio_asymptotic(double m, double r, double s);

// Exact log(Gamma(m+r)/Gamma(m+s)) under the same preconditions; the comparison
// partner of gamma_ratio_asymptotic.
double log_gamma_ratio(double m, double r, double s);

}  // namespace exch
