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

#ifndef PHONOCK_DYNAMICS_HPP
#define PHONOCK_DYNAMICS_HPP

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "phonock/fock.hpp"
#include "phonock/model.hpp"

namespace phonock {

using SparseMat = Eigen::SparseMatrix<Complex>;

/// Lindblad superoperator on column-stacked density matrices: vec(rho) has
/// element (i, j) at flat index i + j * dim. The dissipator convention
/// carries an explicit factor 2, D[O] = 2 O rho O^dag - rho O^dag O -
/// O^dag O rho, with the compensating 1/2 in the rates.
struct Liouvillian {
  SparseMat matrix;  // dim^2 x dim^2
  int dim = 0;
  Shape shape;
};

/// D[O] rho = 2 O rho O^dag - rho O^dag O - O^dag O rho.
Mat dissipator(const Operator& op, const DensityMatrix& rho);

/// Assemble -i[H, .] + sum_j w_j D[O_j] as a sparse superoperator. Each
/// weight w_j multiplies the factor-2 dissipator, so a standard-form decay
/// at rate kappa enters as w = kappa / 2. Trace preservation of the result
/// is asserted.
Liouvillian build_liouvillian(
    const std::optional<Operator>& hamiltonian,
    const std::vector<std::pair<double, Operator>>& weighted_jumps);

/// Full two-mode master equation in the rotating frame:
///   drho/dt = -i[H, rho] + (kappa/2) D[a]
///           + (gamma/2)(1+nbar_m) D[b] + (gamma/2) nbar_m D[b^dag],
/// with the optical thermal pair (kappa/2)(1+nbar_c) D[a], (kappa/2) nbar_c
/// D[a^dag] when nbar_c > 0.
Liouvillian full_liouvillian(const SystemParams& params);

/// Reduced phonon master equation after adiabatic elimination of the lossy
/// cavity: pumping jump B^dag with per-link rates 4 |chi(m)|^2 (m+1) / kappa
/// plus the mechanical thermal dissipators. When restrict_to_ub is set the
/// superoperator is built on the (M+1)-dimensional 0..M ladder, where the
/// gamma = 0 steady state is unique.
Liouvillian effective_liouvillian(const SystemParams& params, double eta, int M,
                                  bool restrict_to_ub = false);

/// Effective pumping rate 4 chi_ref^2 / kappa (the bottleneck link rate).
double kappa_eff(const SystemParams& params, double eta, int M);

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  int n_samples = 50;
  bool store_states = false;
  bool stop_at_steady = false;
  double steady_residual = 1e-8;  // ||L rho||_1 < steady_residual * ||rho||_1
  double trace_tol = 1e-6;
  double positivity_tol = 1e-6;
  std::optional<int> fidelity_target;  // phonon level for the fidelity column
  double initial_step = 0.0;           // 0 = choose automatically
};

/// Time grid plus per-time metrics and the final state of one evolution.
struct EvolutionRecord {
  std::vector<double> times;
  std::vector<double> trace_drift;
  std::vector<double> purity;
  std::vector<double> n_mean;
  std::vector<double> fidelity;  // filled when fidelity_target is set
  std::vector<Mat> states;       // filled when store_states is set
  Mat final_matrix;
  Shape shape;
  bool converged = false;
  double residual = 0.0;  // ||L rho||_1 / ||rho||_1 at the final time
  long n_steps = 0;
  long n_rejected = 0;

  DensityMatrix final_state(double positivity_tol = 1e-6) const;
};

/// Integrate d vec(rho)/dt = L vec(rho) with an adaptive embedded
/// Dormand-Prince 5(4) pair. States are sampled on a uniform grid (plus the
/// end point); trace drift beyond trace_tol or positivity below
/// -positivity_tol aborts with NumericalError.
EvolutionRecord evolve(const Liouvillian& liouv, const DensityMatrix& rho0,
                       double t_final, const EvolveOptions& opts = {});

struct SteadyStateOptions {
  bool check_degenerate = true;  // second solve with a different pinned row
  double positivity_tol = 1e-6;
  double residual_tol = 1e-8;  // ||L rho||_1 / ||rho||_1
};

/// Null-space steady state: sparse LU with one row replaced by the trace
/// constraint, Hermitized and normalized. Raises a degeneracy diagnostic if
/// two different pinned rows disagree, and NumericalError if the result is
/// not positive or does not annihilate the Liouvillian.
DensityMatrix steady_state(const Liouvillian& liouv,
                           const SteadyStateOptions& opts = {});

/// ||L vec(rho)||_1 / ||vec(rho)||_1.
double steady_residual(const Liouvillian& liouv, const DensityMatrix& rho);

/// Map a two-mode rotating-frame state to the displaced measurement frame
/// and trace out the light: rho_m = sum_{n_c} D(eta n_c)^dag rho^{(n_c n_c)}
/// D(eta n_c). Fidelity, purity, occupancy and the Wigner function of the
/// protocol are all evaluated on this reduced state. Trace loss beyond
/// max_trace_loss (mass displaced past the mechanical truncation) is an
/// error; smaller loss is renormalized away.
DensityMatrix displaced_frame_reduce(const DensityMatrix& rho_full,
                                     const SystemParams& params,
                                     double max_trace_loss = 1e-8);

}  // namespace phonock

#endif  // PHONOCK_DYNAMICS_HPP
