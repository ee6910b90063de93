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

#ifndef PHONOCK_METRICS_HPP
#define PHONOCK_METRICS_HPP

#include <Eigen/Dense>

#include "phonock/fock.hpp"

namespace phonock {

/// sqrt(<M| rho |M>) for a single-mode state.
double fidelity_to_fock(const DensityMatrix& rho, int M);

/// Tr[rho^2].
double purity(const DensityMatrix& rho);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 between two mixed
/// states; used for steady-state cross checks.
double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Diagonal of a single-mode state in the Fock basis; sums to one.
Eigen::VectorXd phonon_distribution(const DensityMatrix& rho);

/// Wigner function samples W(q_i, p_j) on a rectangular phase-space grid,
/// normalized so that the q-p integral of W is 1 and the vacuum peaks at
/// 1/pi.
struct PhaseSpaceGrid {
  double q_min = 0.0, q_max = 0.0;
  double p_min = 0.0, p_max = 0.0;
  int n_q = 0, n_p = 0;
  Eigen::MatrixXd values;  // values(i, j) = W(q_i, p_j)

  double q(int i) const { return q_min + (q_max - q_min) * i / (n_q - 1); }
  double p(int j) const { return p_min + (p_max - p_min) * j / (n_p - 1); }
  double dq() const { return (q_max - q_min) / (n_q - 1); }
  double dp() const { return (p_max - p_min) / (n_p - 1); }
  double integral() const;
};

struct WignerOptions {
  int n_q = 121;
  int n_p = 121;
  double extent = 0.0;  // half-width; 0 selects sqrt(2 <n>) + 3
  double boundary_mass_tol = 1e-3;
  int threads = 0;  // 0 = hardware concurrency
};

/// Displaced-parity evaluation W(q,p) = (1/pi) sum_k (-1)^k
/// <k| D^dag(alpha) rho D(alpha) |k> with alpha = (q + i p)/sqrt(2), using
/// exact analytic displacement elements on an internally enlarged Fock
/// window so the parity sum is converged even far from the origin.
PhaseSpaceGrid wigner(const DensityMatrix& rho, const WignerOptions& opts = {});

struct NonclassicalityOptions {
  int base_grid = 121;  // raised automatically for high-occupation states
  int max_refinements = 3;
  double rel_tol = 0.01;
  double abs_floor = 5e-3;  // convergence floor for near-zero values
  double extent = 0.0;
  int threads = 0;
};

/// Phase-space nonclassicality indicator: the quadratic functional
/// (pi/2) Int |grad W|^2 - pi Int W^2, evaluated as
/// -(pi/2) Int W (lap W + 2 W) with central finite differences and
/// 2-D trapezoidal quadrature, refined until successive grids agree. Equals
/// 0 for coherent states and <n> for Fock states.
double nonclassicality(const DensityMatrix& rho,
                       const NonclassicalityOptions& opts = {});

/// Single evaluation of the indicator on a precomputed grid (no refinement).
double nonclassicality_on_grid(const PhaseSpaceGrid& grid);

}  // namespace phonock

#endif  // PHONOCK_METRICS_HPP
