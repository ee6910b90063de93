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

#ifndef PHONOCK_CALIBRATION_HPP
#define PHONOCK_CALIBRATION_HPP

namespace phonock {

/// Associated Laguerre polynomial L_n^{(k)}(x) via the standard three-term
/// recurrence. Exact for polynomial degree; n <= 200.
double laguerre(int n, int k, double x);

/// Coupling calibration for a target phonon number M. The scaled coupling
/// eta = g/omega_m that makes the pump amplitude vanish at level M is the
/// square root of a positive zero of L_M^{(1)}.
struct CalibrationResult {
  int M = 0;
  double x_star = 0.0;    // selected positive zero of L_M^{(1)}
  double eta = 0.0;       // sqrt(x_star) = g / omega_m
  double delta_eta = 0.0; // |eta_{M+1} - eta_M|, both first zeros
  double detuning = 0.0;  // Delta / omega_m = s - eta^2
};

/// Smallest positive zero of L_M^{(1)} (or the index-th smallest when
/// zero_index > 1), bracketing by sign scan and bisecting to double
/// precision. s selects the sideband used for the detuning entry.
CalibrationResult first_zero(int M, int s = 1, int zero_index = 1);

/// |eta_{M+1} - eta_M| for adjacent target states; strictly positive and
/// decreasing in M.
double eta_spacing(int M);

/// Delta / omega_m from the resonance condition Delta + g*eta = s*omega_m.
double sideband_detuning(int s, double eta);

}  // namespace phonock

#endif  // PHONOCK_CALIBRATION_HPP
