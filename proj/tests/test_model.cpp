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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "phonock/calibration.hpp"
#include "phonock/fock.hpp"
#include "phonock/model.hpp"

using namespace phonock;

namespace {

SystemParams desk_params(int M, double omega_drive = 0.02) {
  SystemParams p;
  p.g = first_zero(M).eta;
  p.Omega = omega_drive;
  p.Delta = first_zero(M).detuning;
  p.N_c = 2;
  p.N_m = M + 15;
  return p;
}

}  // namespace

TEST_CASE("rotating-frame Hamiltonian: decoupled limit and hermiticity") {
  SystemParams p;
  p.g = 0.0;
  p.Omega = 0.0;
  p.Delta = 0.4;
  p.N_c = 3;
  p.N_m = 4;
  const Mat h = hamiltonian_rotating(p).matrix();
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  // eigenvalues are -Delta n_c + omega_m n_m in some order
  std::vector<double> want;
  for (int c = 0; c < 3; ++c)
    for (int m = 0; m < 4; ++m) want.push_back(-0.4 * c + 1.0 * m);
  std::sort(want.begin(), want.end());
  for (int i = 0; i < 12; ++i)
    CHECK(es.eigenvalues()(i) == doctest::Approx(want[i]).epsilon(1e-12));

  SystemParams q = desk_params(3, 0.013);
  q.kappa = 0.01;
  const Mat hq = hamiltonian_rotating(q).matrix();
  CHECK((hq - hq.adjoint().eval()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(std::abs(hq(0, 0)) <= 1e-14);  // <0,0|H|0,0> = 0
}

TEST_CASE("chi operator entries") {
  SystemParams p = desk_params(1);
  const double eta1 = std::sqrt(2.0);
  const ChiOperator chi = chi_operator(p, eta1);
  CHECK(chi.values(0) ==
        doctest::Approx(eta1 * p.Omega * std::exp(-1.0)).epsilon(1e-12));
  CHECK(std::abs(chi.values(1)) <= 1e-12 * p.Omega);  // L_1^{(1)}(2) = 0

  for (int M : {5, 10}) {
    SystemParams q = desk_params(M);
    const double eta = first_zero(M).eta;
    const ChiOperator c = chi_operator(q, eta);
    CHECK(std::abs(c.values(M)) <= 1e-12 * q.Omega);
    // no accidental node below M
    for (int n = 0; n < M; ++n) CHECK(std::abs(c.values(n)) > 1e-9 * q.Omega);
  }
}

TEST_CASE("effective Hamiltonian: matrix elements and dark state") {
  const int M = 5;
  SystemParams p = desk_params(M);
  const double eta = first_zero(M).eta;
  const ChiOperator chi = chi_operator(p, eta);
  const Mat h = effective_hamiltonian(p, eta).matrix();
  const int nm = p.N_m;

  CHECK((h - h.adjoint().eval()).cwiseAbs().maxCoeff() <= 1e-14);

  // <0, m | H | 1, m+1> = chi(m) sqrt(m+1)
  for (int m = 0; m + 1 < nm; ++m) {
    const Complex elem = h(0 * nm + m, 1 * nm + m + 1);
    CHECK(std::abs(elem - Complex(chi.values(m) * std::sqrt(m + 1.0))) <= 1e-14);
  }

  // pump out of |0, M> vanishes at the calibration point
  Vec dark = Vec::Zero(2 * nm);
  dark(0 * nm + M) = 1.0;
  CHECK((h * dark).norm() <= 1e-12 * p.Omega);

  // |1, M> is not annihilated: it couples down to |0, M-1> with chi(M-1) sqrt(M)
  Vec excited = Vec::Zero(2 * nm);
  excited(1 * nm + M) = 1.0;
  const double want = std::abs(chi.values(M - 1)) * std::sqrt(double(M));
  CHECK((h * excited).norm() == doctest::Approx(want).epsilon(1e-12));

  // the 0..M block is closed: no element couples level M to M+1
  CHECK(std::abs(h(0 * nm + M, 1 * nm + M + 1)) <= 1e-15 * p.Omega);
  CHECK(std::abs(h(1 * nm + M + 1, 0 * nm + M)) <= 1e-15 * p.Omega);

  SystemParams bad_s = p;
  bad_s.s = 2;
  CHECK_THROWS_AS(effective_hamiltonian(bad_s, eta), std::invalid_argument);
}

TEST_CASE("dark state across M = 1..10") {
  for (int M = 1; M <= 10; ++M) {
    SystemParams p = desk_params(M);
    const double eta = first_zero(M).eta;
    const Mat h = effective_hamiltonian(p, eta).matrix();
    Vec dark = Vec::Zero(2 * p.N_m);
    dark(M) = 1.0;  // photon 0 block
    CHECK((h * dark).norm() <= 1e-12 * p.Omega);
  }
}

TEST_CASE("ladder operator B") {
  const int M = 4;
  SystemParams p = desk_params(M);
  const double eta = first_zero(M).eta;
  const Mat b = b_ladder_operator(p, eta, M).matrix();

  Vec ground = Vec::Zero(p.N_m);
  ground(0) = 1.0;
  CHECK((b * ground).norm() == doctest::Approx(0.0));

  Vec top = Vec::Zero(p.N_m);
  top(M) = 1.0;
  CHECK((b.adjoint() * top).norm() == doctest::Approx(0.0));

  int nonzeros = 0;
  for (int i = 0; i < p.N_m; ++i)
    for (int j = 0; j < p.N_m; ++j)
      if (std::abs(b(i, j)) > 0.0) ++nonzeros;
  CHECK(nonzeros == M);

  SystemParams p1 = desk_params(1);
  const Mat b1 = b_ladder_operator(p1, std::sqrt(2.0), 1).matrix();
  CHECK(std::abs(b1(0, 1) - Complex(chi_operator(p1, std::sqrt(2.0)).values(0))) <=
        1e-14);
}

TEST_CASE("chi_ref and chi_max") {
  const int M = 5;
  SystemParams p = desk_params(M);
  const double eta = first_zero(M).eta;
  const ChiOperator chi = chi_operator(p, eta);
  double ref = 1e300, mx = 0.0;
  for (int n = 0; n < M; ++n) {
    ref = std::min(ref, std::abs(chi.values(n)) * std::sqrt(n + 1.0));
    mx = std::max(mx, std::abs(chi.values(n)));
  }
  CHECK(chi_ref(p, eta, M) == doctest::Approx(ref));
  CHECK(chi_max(p, eta, M) == doctest::Approx(mx));
  CHECK(chi_ref(p, eta, M) > 0.0);
}

TEST_CASE("rwa regime guards") {
  SystemParams p = desk_params(3);
  p.kappa = 1.5;  // not resolved-sideband
  CHECK_THROWS_AS(chi_operator(p, 1.0), std::invalid_argument);
  p.kappa = 0.1;
  p.Omega = 1.2;  // not weak drive
  CHECK_THROWS_AS(effective_hamiltonian(p, 1.0), std::invalid_argument);
}

TEST_CASE("displaced Hamiltonian: structure at t = 0") {
  SystemParams p = desk_params(3, 0.05);
  p.N_m = 8;
  const double eta = p.g;

  SystemParams off = p;
  off.Omega = 0.0;
  CHECK(hamiltonian_displaced(off, 0.0).matrix().cwiseAbs().maxCoeff() == 0.0);

  const Mat h1 = hamiltonian_displaced(p, 0.37).matrix();
  CHECK((h1 - h1.adjoint().eval()).cwiseAbs().maxCoeff() <= 1e-13);

  // <1, m | H_D(0) | 0, m'> = Omega <m| D^dag(eta) |m'>
  const Mat h0 = hamiltonian_displaced(p, 0.0).matrix();
  const Mat ddag = displacement_matrix(eta, p.N_m, p.N_m).adjoint();
  for (int m = 0; m < p.N_m; ++m)
    for (int mp = 0; mp < p.N_m; ++mp)
      CHECK(std::abs(h0(1 * p.N_m + m, 0 * p.N_m + mp) - p.Omega * ddag(m, mp)) <=
            1e-13);
}

TEST_CASE("frame equivalence: rotating frame vs displaced interaction picture") {
  const int M = 3;
  const CalibrationResult calib = first_zero(M);
  SystemParams p;
  p.g = calib.eta;
  p.Omega = 0.05;
  p.Delta = calib.detuning;
  p.N_c = 2;
  // N_m = 8: the truncated frames differ by ~7e-3 at N_m = 6 (boundary
  // tails of D(eta) with eta ~ 0.97) and by ~1e-6 at N_m = 12; 8 keeps the
  // truncation noise well under the 5e-3 equivalence budget
  p.N_m = 8;
  const int dim = p.N_c * p.N_m;
  const double eta = p.g;

  // exact rotating-frame evolution by eigendecomposition
  const Mat h_rot = hamiltonian_rotating(p).matrix();
  Eigen::SelfAdjointEigenSolver<Mat> es(h_rot);

  // block-diagonal conditional displacement D(eta n_c)
  Mat d_xi = Mat::Zero(dim, dim);
  for (int c = 0; c < p.N_c; ++c)
    d_xi.block(c * p.N_m, c * p.N_m, p.N_m, p.N_m) =
        displacement_matrix(eta * c, p.N_m, p.N_m);

  Vec psi0 = Vec::Zero(dim);
  psi0(0) = 1.0;  // |0_c, 0_m>

  // integrate the time-dependent displaced-frame Hamiltonian (oracle path)
  Vec phi = psi0;
  const double t_end = 20.0;
  const double h_step = 5e-4;
  const long n_steps = std::lround(t_end / h_step);
  const Complex mi(0.0, -1.0);
  auto rhs = [&](double t, const Vec& v) -> Vec {
    return mi * (hamiltonian_displaced(p, t).matrix() * v);
  };
  double t = 0.0;
  const int check_every = 4000;
  for (long step = 0; step < n_steps; ++step) {
    const Vec k1 = rhs(t, phi);
    const Vec k2 = rhs(t + h_step / 2, phi + (h_step / 2) * k1);
    const Vec k3 = rhs(t + h_step / 2, phi + (h_step / 2) * k2);
    const Vec k4 = rhs(t + h_step, phi + h_step * k3);
    phi += (h_step / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h_step;

    if ((step + 1) % check_every == 0) {
      // exact rotating-frame state at the same time, mapped to the displaced
      // interaction picture; diagonal phases drop from populations, so only
      // the conditional displacement matters here
      const Vec phases =
          (mi * t * es.eigenvalues().cast<Complex>()).array().exp();
      const Vec psi_rot =
          es.eigenvectors() *
          (phases.array() * (es.eigenvectors().adjoint() * psi0).array())
              .matrix();
      const Vec mapped = d_xi.adjoint() * psi_rot;
      for (int i = 0; i < dim; ++i)
        CHECK(std::abs(std::norm(mapped(i)) - std::norm(phi(i))) <= 5e-3);
    }
  }
}
