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

#include "phonock/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "phonock/calibration.hpp"

namespace phonock {

void SystemParams::validate() const {
  if (omega_m <= 0.0) throw std::invalid_argument("SystemParams: omega_m must be > 0");
  if (g < 0.0 || Omega < 0.0 || kappa < 0.0 || gamma < 0.0 || nbar_m < 0.0 || nbar_c < 0.0)
    throw std::invalid_argument("SystemParams: rates and occupancies must be >= 0");
  if (s < 0) throw std::invalid_argument("SystemParams: s must be >= 0");
  if (N_c < 2 || N_m < 2)
    throw std::invalid_argument("SystemParams: truncations must be >= 2");
}

void SystemParams::require_rwa_regime() const {
  validate();
  if (kappa >= omega_m)
    throw std::invalid_argument(
        "SystemParams: resolved sideband requires kappa < omega_m");
  if (Omega >= omega_m)
    throw std::invalid_argument("SystemParams: weak drive requires Omega < omega_m");
}

Operator ChiOperator::as_operator() const {
  const int n = static_cast<int>(values.size());
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = values(i);
  return Operator(FockSpace(n), std::move(m));
}

ChiOperator chi_operator(const SystemParams& params, double eta) {
  params.require_rwa_regime();
  if (eta <= 0.0) throw std::invalid_argument("chi_operator: eta must be > 0");
  const double x = eta * eta;
  const double pref = eta * params.Omega * std::exp(-x / 2.0) * params.omega_m;
  ChiOperator chi;
  chi.eta = eta;
  chi.values.resize(params.N_m);
  for (int n = 0; n < params.N_m; ++n)
    chi.values(n) = pref * laguerre(n, 1, x) / (n + 1.0);
  return chi;
}

double chi_ref(const SystemParams& params, double eta, int M) {
  if (M < 1 || M >= params.N_m)
    throw std::invalid_argument("chi_ref: M must be in 1..N_m-1");
  const ChiOperator chi = chi_operator(params, eta);
  double ref = std::numeric_limits<double>::infinity();
  for (int n = 0; n < M; ++n)
    ref = std::min(ref, std::abs(chi.values(n)) * std::sqrt(n + 1.0));
  return ref;
}

double chi_max(const SystemParams& params, double eta, int M) {
  if (M < 1 || M >= params.N_m)
    throw std::invalid_argument("chi_max: M must be in 1..N_m-1");
  const ChiOperator chi = chi_operator(params, eta);
  double m = 0.0;
  for (int n = 0; n < M; ++n) m = std::max(m, std::abs(chi.values(n)));
  return m;
}

Operator hamiltonian_rotating(const SystemParams& params) {
  params.validate();
  const FockSpace opt(params.N_c);
  const FockSpace mech(params.N_m);
  const Mat a = annihilation(opt).matrix();
  const Mat b = annihilation(mech).matrix();
  const Mat n_opt = number(opt).matrix();
  const Mat id_opt = Mat::Identity(params.N_c, params.N_c);
  const Mat id_mech = Mat::Identity(params.N_m, params.N_m);

  Mat h = kron(-params.Delta * n_opt, id_mech);
  h += kron(id_opt, params.omega_m * number(mech).matrix());
  h -= params.g * kron(n_opt, Mat(b + b.adjoint()));
  h += params.Omega * kron(Mat(a + a.adjoint()), id_mech);
  return Operator(Shape{params.N_c, params.N_m}, std::move(h));
}

Operator hamiltonian_displaced(const SystemParams& params, double t) {
  params.validate();
  const double eta = params.g / params.omega_m;
  const Complex i_unit(0.0, 1.0);
  // Kerr interaction picture dresses the n -> n+1 transition with the phase
  // e^{-i g eta t (2n+1)} of the source level n
  Mat adag_phased = creation(FockSpace(params.N_c)).matrix();
  for (int n = 0; n < params.N_c; ++n) {
    const Complex phase = std::exp(-i_unit * (params.g * eta * t * (2.0 * n + 1.0)));
    adag_phased.col(n) *= phase;
  }
  const Complex drive = params.Omega * std::exp(-i_unit * params.Delta * t);
  const Complex alpha = eta * std::exp(i_unit * params.omega_m * t);
  const Mat d_dag =
      displacement_matrix(alpha, params.N_m, params.N_m).adjoint();
  Mat h = drive * kron(adag_phased, d_dag);
  Mat hh = h + h.adjoint().eval();
  return Operator(Shape{params.N_c, params.N_m}, std::move(hh));
}

Operator effective_hamiltonian(const SystemParams& params, double eta) {
  params.require_rwa_regime();
  if (params.s != 1)
    throw std::invalid_argument(
        "effective_hamiltonian: only the s = 1 sideband is supported");
  const ChiOperator chi = chi_operator(params, eta);
  const Mat chi_m = chi.as_operator().matrix();
  const Mat b = annihilation(FockSpace(params.N_m)).matrix();
  Mat sigma_minus = Mat::Zero(2, 2);
  sigma_minus(0, 1) = 1.0;
  Mat h = kron(sigma_minus, Mat(chi_m * b));
  h += kron(Mat(sigma_minus.adjoint()), Mat(b.adjoint() * chi_m));
  return Operator(Shape{2, params.N_m}, std::move(h));
}

Operator b_ladder_operator(const SystemParams& params, double eta, int M) {
  if (M < 1 || M >= params.N_m)
    throw std::invalid_argument("b_ladder_operator: M must be in 1..N_m-1");
  const ChiOperator chi = chi_operator(params, eta);
  Mat b = Mat::Zero(params.N_m, params.N_m);
  for (int m = 0; m < M; ++m)
    b(m, m + 1) = chi.values(m) * std::sqrt(m + 1.0);
  return Operator(FockSpace(params.N_m), std::move(b));
}

}  // namespace phonock
