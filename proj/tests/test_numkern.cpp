// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "exch/error.hpp"
#include "exch/numkern.hpp"

using exch::SignedLogValue;

namespace {

void check_value(const SignedLogValue& v, double expected) {
  if (expected == 0.0) {
    CHECK(v.is_zero());
    CHECK(v.sign() == 0);
    return;
  }
  CHECK(v.sign() == (expected > 0 ? 1 : -1));
  CHECK(v.to_real() == doctest::Approx(expected).epsilon(1e-14));
}

}  // namespace

TEST_CASE("rising factorial") {
  check_value(exch::rising(1.0, 2), 2.0);
  check_value(exch::rising(0.5, 2), 0.75);
  check_value(exch::rising(-0.5, 2), -0.25);
  check_value(exch::rising(-2.0, 4), 0.0);
  check_value(exch::rising(7.3, 0), 1.0);
  check_value(exch::rising(-3.0, 0), 1.0);
}

TEST_CASE("rising factorial keeps precision past the log-gamma switch") {
  // (1)_n = n!
  CHECK(exch::rising(1.0, 100).logmag() == doctest::Approx(std::lgamma(101.0)).epsilon(1e-14));
  CHECK(exch::rising(0.5, 200).logmag() == doctest::Approx(std::lgamma(200.5) - std::lgamma(0.5)).epsilon(1e-13));
  // Negative start with many terms: sign alternates once per negative factor.
  CHECK(exch::rising(-2.5, 100).sign() == -1);
  CHECK(exch::rising(-3.5, 100).sign() == 1);
}

TEST_CASE("falling factorial") {
  check_value(exch::falling(3.0, 2), 6.0);
  check_value(exch::falling(-1.0, 3), -6.0);
  check_value(exch::falling(0.5, 2), -0.25);
  check_value(exch::falling(2.0, 3), 0.0);
}

TEST_CASE("generalized binomial") {
  for (double x : {-3.7, -1.0, 0.0, 0.5, 12.0}) check_value(exch::gen_binom(x, 0), 1.0);
  check_value(exch::gen_binom(-1.0, 2), 1.0);
  check_value(exch::gen_binom(0.5, 2), -0.125);
  check_value(exch::gen_binom(5.0, 2), 10.0);
  check_value(exch::gen_binom(3.0, 5), 0.0);
}

TEST_CASE("signed log arithmetic") {
  const auto a = SignedLogValue::from_real(-4.0);
  const auto b = SignedLogValue::from_real(0.5);
  check_value(a * b, -2.0);
  check_value(a / b, -8.0);
  check_value(-a, 4.0);
  check_value(a * SignedLogValue::zero(), 0.0);
  check_value(SignedLogValue::one(), 1.0);
  CHECK_THROWS_AS(a / SignedLogValue::zero(), exch::Error);
}

TEST_CASE("gamma ratio asymptotic") {
  auto rel_error = [](double m, double r, double s) {
    return std::fabs(std::exp(exch::log_gamma_ratio(m, r, s)) / exch::gamma_ratio_asymptotic(m, r, s) - 1.0);
  };
  CHECK(exch::gamma_ratio_asymptotic(10.0, 1.0, 0.0) == doctest::Approx(10.0));
  CHECK(rel_error(10.0, 1.0, 0.0) < 1e-12);
  CHECK(exch::gamma_ratio_asymptotic(100.0, 0.5, 0.0) == doctest::Approx(10.0));
  CHECK(std::exp(exch::log_gamma_ratio(100.0, 0.5, 0.0)) == doctest::Approx(9.987507861).epsilon(1e-9));
  CHECK(rel_error(100.0, 0.5, 0.0) < 2e-3);
  CHECK(exch::gamma_ratio_asymptotic(1e6, 0.5, -0.5) == doctest::Approx(1e6));
  CHECK(rel_error(1e6, 0.5, -0.5) < 1e-6);
  CHECK(rel_error(1e3, 0.5, 0.0) < rel_error(1e2, 0.5, 0.0));
  CHECK_THROWS_AS(exch::gamma_ratio_asymptotic(-1.0, 0.5, 0.0), exch::Error);
  CHECK_THROWS_AS(exch::gamma_ratio_asymptotic(1.0, -2.0, 0.0), exch::Error);
}

TEST_CASE("log factorial") {
  CHECK(exch::log_factorial(0) == 0.0);
  CHECK(exch::log_factorial(5) == doctest::Approx(std::log(120.0)));
}
