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

#include "phonock/metrics.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

namespace phonock {

namespace {
constexpr double kPi = std::numbers::pi;
}

double fidelity_to_fock(const DensityMatrix& rho, int M) {
  if (rho.shape().two_mode())
    throw std::invalid_argument("fidelity_to_fock: expected a single-mode state");
  if (M < 0 || M >= rho.dim())
    throw std::invalid_argument("fidelity_to_fock: M outside truncation");
  const double p = std::max(0.0, rho.matrix()(M, M).real());
  return std::min(1.0, std::sqrt(p));
}

double purity(const DensityMatrix& rho) {
  // Tr[rho^2] = ||rho||_F^2 for Hermitian rho
  return rho.matrix().squaredNorm();
}

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.shape() == sigma.shape()))
    throw std::invalid_argument("state_fidelity: shape mismatch");
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.matrix());
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Mat sqrt_rho =
      es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  Mat inner = sqrt_rho * sigma.matrix() * sqrt_rho;
  inner = (inner + inner.adjoint().eval()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es2(inner, Eigen::EigenvaluesOnly);
  const double root_sum = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return root_sum * root_sum;
}

Eigen::VectorXd phonon_distribution(const DensityMatrix& rho) {
  if (rho.shape().two_mode())
    throw std::invalid_argument("phonon_distribution: expected a single-mode state");
  Eigen::VectorXd p = rho.matrix().diagonal().real();
  const double total = p.sum();
  if (std::abs(total - 1.0) > 1e-8)
    throw NumericalError("phonon_distribution: probabilities do not sum to 1");
  return p;
}

double PhaseSpaceGrid::integral() const {
  // 2-D trapezoid: half weights on edges, quarter on corners
  double sum = values.sum();
  sum -= 0.5 * (values.row(0).sum() + values.row(n_q - 1).sum() +
                values.col(0).sum() + values.col(n_p - 1).sum());
  sum += 0.25 * (values(0, 0) + values(0, n_p - 1) + values(n_q - 1, 0) +
                 values(n_q - 1, n_p - 1));
  return sum * dq() * dp();
}

namespace {

// Parity expectation of the displaced state via exact displacement elements
// on a window [0, N_m) x [0, n_eval): the displaced basis states extend
// beyond the state's own truncation, so the k-sum window grows with |alpha|.
double wigner_point(const Mat& rho, Complex alpha) {
  const int nm = static_cast<int>(rho.rows());
  const double abs_alpha = std::abs(alpha);
  const double mu = std::pow(std::sqrt(double(nm - 1)) + abs_alpha, 2.0);
  const int n_eval = std::max(nm, int(std::ceil(mu + 6.0 * std::sqrt(mu) + 10.0)));
  const Mat d = displacement_matrix(alpha, nm, n_eval);
  const Mat g = rho * d;
  Complex acc = 0.0;
  for (int k = 0; k < n_eval; ++k) {
    const Complex term = d.col(k).dot(g.col(k));  // conjugates d
    acc += (k % 2 == 0) ? term : -term;
  }
  if (std::abs(acc.imag()) > 1e-10)
    throw NumericalError("wigner: non-real parity expectation");
  return acc.real() / kPi;
}

void run_rows(int n_rows, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) threads = int(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, n_rows));
  if (threads == 1) {
    for (int i = 0; i < n_rows; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::atomic<int> next{0};
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n_rows; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

PhaseSpaceGrid wigner_impl(const DensityMatrix& rho, int n_q, int n_p,
                           double extent, double boundary_mass_tol, int threads) {
  if (rho.shape().two_mode())
    throw std::invalid_argument("wigner: expected a single-mode state");
  if (n_q < 9 || n_p < 9)
    throw std::invalid_argument("wigner: grid too coarse");
  PhaseSpaceGrid grid;
  if (extent <= 0.0)
    extent = std::sqrt(2.0 * std::max(0.0, mean_occupation(rho))) + 3.0;
  grid.q_min = -extent;
  grid.q_max = extent;
  grid.p_min = -extent;
  grid.p_max = extent;
  grid.n_q = n_q;
  grid.n_p = n_p;
  grid.values.resize(n_q, n_p);
  const Mat& r = rho.matrix();
  run_rows(n_q, threads, [&](int i) {
    const double q = grid.q(i);
    for (int j = 0; j < n_p; ++j) {
      const Complex alpha(q / std::sqrt(2.0), grid.p(j) / std::sqrt(2.0));
      grid.values(i, j) = wigner_point(r, alpha);
    }
  });

  double boundary_mass = 0.0;
  for (int i = 0; i < n_q; ++i)
    boundary_mass += std::abs(grid.values(i, 0)) + std::abs(grid.values(i, n_p - 1));
  for (int j = 1; j < n_p - 1; ++j)
    boundary_mass += std::abs(grid.values(0, j)) + std::abs(grid.values(n_q - 1, j));
  boundary_mass *= grid.dq() * grid.dp();
  if (boundary_mass > boundary_mass_tol) {
    std::ostringstream msg;
    msg << "wigner: boundary mass " << boundary_mass
        << " exceeds tolerance; grid extent too small for the state";
    throw NumericalError(msg.str());
  }
  const double total = grid.integral();
  if (std::abs(total - 1.0) > 2e-2) {
    std::ostringstream msg;
    msg << "wigner: grid integral " << total << " deviates from 1 beyond 2e-2";
    throw NumericalError(msg.str());
  }
  return grid;
}

}  // namespace

PhaseSpaceGrid wigner(const DensityMatrix& rho, const WignerOptions& opts) {
  return wigner_impl(rho, opts.n_q, opts.n_p, opts.extent,
                     opts.boundary_mass_tol, opts.threads);
}

double nonclassicality_on_grid(const PhaseSpaceGrid& grid) {
  const Eigen::MatrixXd& w = grid.values;
  const double dq = grid.dq();
  const double dp = grid.dp();
  double acc = 0.0;
  for (int i = 1; i < grid.n_q - 1; ++i) {
    for (int j = 1; j < grid.n_p - 1; ++j) {
      const double lap = (w(i + 1, j) - 2.0 * w(i, j) + w(i - 1, j)) / (dq * dq) +
                         (w(i, j + 1) - 2.0 * w(i, j) + w(i, j - 1)) / (dp * dp);
      acc += w(i, j) * (lap + 2.0 * w(i, j));
    }
  }
  return -kPi / 2.0 * acc * dq * dp;
}

double nonclassicality(const DensityMatrix& rho,
                       const NonclassicalityOptions& opts) {
  WignerOptions wopts;
  wopts.extent = opts.extent;
  wopts.threads = opts.threads;
  // The finite-difference Laplacian needs to resolve the fastest phase-space
  // oscillation, whose wavenumber grows like sqrt(4 <n> + 2). Bump the base
  // grid to ~10 points per shortest wavelength before refining.
  const double n_mean = std::max(0.0, mean_occupation(rho));
  const double extent =
      opts.extent > 0.0 ? opts.extent : std::sqrt(2.0 * n_mean) + 3.0;
  const double k_spec = std::sqrt(4.0 * n_mean + 2.0);
  int base = std::max(opts.base_grid,
                      int(std::ceil(2.0 * extent * k_spec * 10.0 / (2.0 * kPi))));
  if (base % 2 == 0) ++base;
  wopts.n_q = wopts.n_p = base;
  double prev = nonclassicality_on_grid(wigner(rho, wopts));
  for (int refinement = 1; refinement <= opts.max_refinements; ++refinement) {
    wopts.n_q = wopts.n_p = wopts.n_q + wopts.n_q / 2;
    const double curr = nonclassicality_on_grid(wigner(rho, wopts));
    const double delta = std::abs(curr - prev);
    prev = curr;
    if (delta < std::max(opts.rel_tol * std::abs(curr), opts.abs_floor))
      return curr;
  }
  std::ostringstream msg;
  msg << "nonclassicality: no grid convergence after " << opts.max_refinements
      << " refinements (last value " << prev << ")";
  throw NumericalError(msg.str());
}

}  // namespace phonock
