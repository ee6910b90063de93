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

#include "phonock/calibration.hpp"

#include <cmath>
#include <stdexcept>

namespace phonock {

double laguerre(int n, int k, double x) {
  if (n < 0 || k < 0) throw std::invalid_argument("laguerre: n, k must be >= 0");
  if (n > 200) throw std::invalid_argument("laguerre: n > 200 outside stability budget");
  if (n == 0) return 1.0;
  double prev = 1.0;          // L_0
  double curr = 1.0 + k - x;  // L_1
  for (int m = 1; m < n; ++m) {
    const double next = ((2.0 * m + 1.0 + k - x) * curr - (m + k) * prev) / (m + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

namespace {

// Bisect a bracketed sign change of L_M^{(1)} down to adjacent doubles.
double bisect_zero(int M, double lo, double hi) {
  double flo = laguerre(M, 1, lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval collapsed
    const double fmid = laguerre(M, 1, mid);
    if ((flo > 0.0) == (fmid > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// L_M^{(1)}(0) = M+1 > 0; scan for the zero_index-th sign change, then
// bisect. The smallest zero stays well above the scan step for M <= 100.
double locate_zero(int M, int zero_index) {
  const double step = M > 40 ? 0.01 : 0.05;
  double x = 0.0;
  double fx = laguerre(M, 1, x);
  int crossings = 0;
  const double x_max = 4.0 * M + 8.0;  // all zeros of L_M^{(1)} lie below this
  while (x < x_max) {
    const double x_next = x + step;
    const double f_next = laguerre(M, 1, x_next);
    if ((fx > 0.0) != (f_next > 0.0)) {
      ++crossings;
      if (crossings == zero_index) return bisect_zero(M, x, x_next);
    }
    x = x_next;
    fx = f_next;
  }
  throw std::runtime_error("first_zero: root not bracketed (internal failure)");
}

}  // namespace

CalibrationResult first_zero(int M, int s, int zero_index) {
  if (M < 1 || M > 100) throw std::invalid_argument("first_zero: M must be in 1..100");
  if (zero_index < 1 || zero_index > M)
    throw std::invalid_argument("first_zero: L_M^{(1)} has exactly M positive zeros");
  CalibrationResult result;
  result.M = M;
  result.x_star = locate_zero(M, zero_index);
  result.eta = std::sqrt(result.x_star);
  result.delta_eta = std::abs(std::sqrt(locate_zero(M + 1, zero_index)) - result.eta);
  result.detuning = sideband_detuning(s, result.eta);
  return result;
}

double eta_spacing(int M) {
  if (M < 1) throw std::invalid_argument("eta_spacing: M must be >= 1");
  return std::abs(first_zero(M + 1).eta - first_zero(M).eta);
}

double sideband_detuning(int s, double eta) {
  if (s < 0) throw std::invalid_argument("sideband_detuning: s must be >= 0");
  return double(s) - eta * eta;
}

}  // namespace phonock
