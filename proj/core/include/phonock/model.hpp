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

#ifndef PHONOCK_MODEL_HPP
#define PHONOCK_MODEL_HPP

#include <Eigen/Dense>

#include "phonock/fock.hpp"

namespace phonock {

/// Physical rates and frequencies of the driven optomechanical cavity. All
/// frequencies and rates are measured in units of the mechanical frequency,
/// which is fixed to 1.
struct SystemParams {
  double omega_m = 1.0;  // unit of frequency
  double g = 0.0;        // single-photon coupling
  double Omega = 0.02;   // drive amplitude (real)
  double Delta = 0.0;    // pump detuning omega_L - omega_c
  double kappa = 0.0;    // cavity decay rate
  double gamma = 0.0;    // mechanical damping rate
  double nbar_m = 0.0;   // mechanical bath occupancy
  double nbar_c = 0.0;   // optical bath occupancy
  int s = 1;             // sideband order
  int N_c = 4;           // optical truncation
  int N_m = 20;          // mechanical truncation

  void validate() const;
  /// Effective (rotating-wave) objects additionally need the resolved
  /// sideband, kappa < omega_m, and a weak drive, Omega < omega_m.
  void require_rwa_regime() const;
};

/// Diagonal mechanical pump-amplitude operator: entries
/// chi(n) = eta * Omega * exp(-eta^2/2) * L_n^{(1)}(eta^2) / (n+1),
/// in units of omega_m. Entry M vanishes when eta is calibrated for M.
struct ChiOperator {
  Eigen::VectorXd values;
  double eta = 0.0;
  Operator as_operator() const;
};

ChiOperator chi_operator(const SystemParams& params, double eta);

/// Slowest ladder pump amplitude min_{0<=n<M} |chi(n)| sqrt(n+1); the
/// bottleneck that sets the protocol's convergence rate and the regime
/// classification.
double chi_ref(const SystemParams& params, double eta, int M);

/// Largest pump-amplitude entry max_n |chi(n)| over the ladder, used for the
/// bad-cavity default kappa.
double chi_max(const SystemParams& params, double eta, int M);

/// Time-independent two-mode Hamiltonian in the frame rotating at the laser
/// frequency:
///   -Delta a^dag a + omega_m b^dag b - g a^dag a (b + b^dag) + Omega (a + a^dag).
/// This is the production frame for full master-equation runs.
Operator hamiltonian_rotating(const SystemParams& params);

/// Time-dependent Hamiltonian in the displaced interaction picture,
///   Omega e^{-i Delta t} e^{-i g eta t (2 n + 1)} a^dag D^dag(eta e^{i omega_m t}) + h.c.
/// Built element-exactly per call; a cross-validation oracle, not the
/// production evolution path.
Operator hamiltonian_displaced(const SystemParams& params, double t);

/// Resonant effective Hamiltonian for s = 1 on the {0,1} photon manifold:
///   |0><1| chi b + |1><0| b^dag chi.
/// At eta = eta_M the pump matrix element out of phonon level M vanishes, so
/// |0_c, M> is annihilated and the 0..M block closes.
Operator effective_hamiltonian(const SystemParams& params, double eta);

/// Lowering operator B = sum_{m=0}^{M-1} chi(m) sqrt(m+1) |m><m+1| on the
/// 0..M ladder (embedded in the N_m-dimensional space). Its adjoint pumps
/// population up the ladder and stops dead at |M>.
Operator b_ladder_operator(const SystemParams& params, double eta, int M);

}  // namespace phonock

#endif  // PHONOCK_MODEL_HPP
