// Copyright 2026 The phonock authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "phonock/calibration.hpp"

using namespace phonock;

namespace {

// Independent oracle: explicit summation
// L_n^{(k)}(x) = sum_i (-1)^i C(n+k, n-i) x^i / i!, reliable for n <= 15.
// The largest term bounds the cancellation error of the alternating sum.
struct SeriesValue {
  double value;
  double max_term;
};

SeriesValue laguerre_series(int n, int k, double x) {
  double sum = 0.0;
  double max_term = 0.0;
  for (int i = 0; i <= n; ++i) {
    double binom = 1.0;
    for (int j = 0; j < n - i; ++j) binom *= double(n + k - j) / double(n - i - j);
    double term = binom;
    for (int j = 1; j <= i; ++j) term *= -x / j;
    sum += term;
    max_term = std::max(max_term, std::abs(term));
  }
  return {sum, max_term};
}

}  // namespace

TEST_CASE("laguerre closed forms") {
  CHECK(laguerre(1, 1, 2.0) == doctest::Approx(0.0).epsilon(1e-14));
  for (int k = 0; k < 6; ++k)
    for (double x : {0.0, 0.7, 3.0}) CHECK(laguerre(0, k, x) == doctest::Approx(1.0));
  const double root = 3.0 - std::sqrt(3.0);
  CHECK(std::abs(laguerre(2, 1, root)) <= 1e-12);
}

TEST_CASE("laguerre recurrence vs summation oracle") {
  for (int n = 0; n <= 15; ++n)
    for (int k = 0; k <= 4; ++k)
      for (double x : {0.05, 0.5, 1.3, 4.2, 9.7}) {
        const SeriesValue want = laguerre_series(n, k, x);
        // 1e-10 where the oracle itself is well conditioned; otherwise the
        // oracle's own cancellation error dominates the budget
        const double tol = std::max(1e-10 * std::max(1.0, std::abs(want.value)),
                                    100.0 * 2.3e-16 * want.max_term);
        CHECK(std::abs(laguerre(n, k, x) - want.value) <= tol);
      }
}

TEST_CASE("first zeros, closed forms for M = 1, 2") {
  const CalibrationResult m1 = first_zero(1);
  CHECK(std::abs(m1.x_star - 2.0) <= 1e-12);
  CHECK(std::abs(m1.eta - std::sqrt(2.0)) <= 1e-10);

  const CalibrationResult m2 = first_zero(2);
  CHECK(std::abs(m2.x_star - (3.0 - std::sqrt(3.0))) <= 1e-12);
  CHECK(std::abs(m2.eta - std::sqrt(3.0 - std::sqrt(3.0))) <= 1e-10);
  CHECK(m2.eta == doctest::Approx(1.12603).epsilon(1e-5));

  // strong-coupling region: M <= 2 needs g >= omega_m
  CHECK(m1.eta >= 1.0);
  CHECK(m2.eta >= 1.0);
}

TEST_CASE("zero residuals and interlacing up to M = 40") {
  double prev_x = 0.0;
  for (int m = 1; m <= 40; ++m) {
    const CalibrationResult c = first_zero(m);
    CHECK(std::abs(laguerre(m, 1, c.x_star)) <= 1e-12);
    if (m >= 2) CHECK(c.x_star < prev_x);
    prev_x = c.x_star;
  }
}

TEST_CASE("eta monotone decreasing and spacing decreasing") {
  double prev_eta = 1e9;
  double prev_spacing = 1e9;
  for (int m = 1; m <= 20; ++m) {
    const CalibrationResult c = first_zero(m);
    CHECK(c.eta < prev_eta);
    CHECK(c.eta > 0.0);
    const double spacing = eta_spacing(m);
    CHECK(spacing > 0.0);
    CHECK(spacing < prev_spacing);
    CHECK(spacing == doctest::Approx(c.delta_eta).epsilon(1e-12));
    prev_eta = c.eta;
    prev_spacing = spacing;
  }
}

TEST_CASE("eta spacing closed form at M = 1") {
  const double want = std::sqrt(2.0) - std::sqrt(3.0 - std::sqrt(3.0));
  CHECK(std::abs(eta_spacing(1) - want) <= 1e-12);
  CHECK(eta_spacing(1) == doctest::Approx(0.28818).epsilon(1e-4));
}

TEST_CASE("sideband detuning") {
  CHECK(sideband_detuning(0, 1.0) == doctest::Approx(-1.0));
  CHECK(sideband_detuning(1, std::sqrt(2.0)) == doctest::Approx(-1.0));
  CHECK(sideband_detuning(1, 1e-9) == doctest::Approx(1.0));
}

TEST_CASE("later zeros exposed by index") {
  // second zero of L_2^{(1)} is 3 + sqrt(3)
  const CalibrationResult c = first_zero(2, 1, 2);
  CHECK(std::abs(c.x_star - (3.0 + std::sqrt(3.0))) <= 1e-12);
  CHECK_THROWS_AS(first_zero(2, 1, 3), std::invalid_argument);
}

TEST_CASE("moderate-coupling region near M = 15") {
  // the computed first zero, not the rough eta ~ 0.2 sometimes quoted for
  // M ~ 15; the protocol's own calibration is the authority here
  const CalibrationResult c = first_zero(15);
  CHECK(c.eta > 0.40);
  CHECK(c.eta < 0.55);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(first_zero(0), std::invalid_argument);
  CHECK_THROWS_AS(first_zero(101), std::invalid_argument);
  CHECK_THROWS_AS(laguerre(-1, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(laguerre(201, 1, 1.0), std::invalid_argument);
}
