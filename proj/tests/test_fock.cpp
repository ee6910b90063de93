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

#include <complex>
#include <random>

#include <Eigen/Eigenvalues>

#include "phonock/fock.hpp"

using namespace phonock;

namespace {

// Oracle: exp(alpha b^dag - conj(alpha) b) through the eigendecomposition of
// the Hermitian generator i(alpha b^dag - conj(alpha) b).
Mat displacement_matexp(Complex alpha, int dim) {
  const FockSpace space(dim);
  const Mat b = annihilation(space).matrix();
  const Mat gen = alpha * b.adjoint() - std::conj(alpha) * b;
  const Mat herm = Complex(0, 1) * gen;
  Eigen::SelfAdjointEigenSolver<Mat> es(herm);
  const Vec phases = (Complex(0, -1) * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Mat random_matrix(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist;
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

DensityMatrix random_state(int dim, unsigned seed, Shape shape) {
  Mat g = random_matrix(dim, seed);
  Mat rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix::from_matrix(std::move(rho), shape);
}

}  // namespace

TEST_CASE("annihilation matrix elements") {
  const Mat a2 = annihilation(FockSpace(2)).matrix();
  CHECK(a2(0, 1).real() == doctest::Approx(1.0));
  CHECK(a2(0, 0) == Complex(0.0));
  CHECK(a2(1, 0) == Complex(0.0));
  CHECK(a2(1, 1) == Complex(0.0));

  const Mat a3 = annihilation(FockSpace(3)).matrix();
  CHECK(a3(1, 2).real() == doctest::Approx(std::sqrt(2.0)));

  const int dim = 8;
  const Mat a = annihilation(FockSpace(dim)).matrix();
  const Mat n = a.adjoint() * a;
  for (int k = 0; k < dim; ++k) {
    Vec basis = Vec::Zero(dim);
    basis(k) = 1.0;
    CHECK((n * basis - double(k) * basis).norm() == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("creation, number, identity") {
  const Mat c = creation(FockSpace(2)).matrix();
  CHECK(c(1, 0).real() == doctest::Approx(1.0));
  CHECK(c(0, 1) == Complex(0.0));

  const Mat n = number(FockSpace(4)).matrix();
  for (int k = 0; k < 4; ++k) CHECK(n(k, k).real() == doctest::Approx(double(k)));

  const Mat x = random_matrix(5, 11);
  const Mat id = identity(FockSpace(5)).matrix();
  CHECK((id * x - x).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("commutator truncation structure") {
  const int dim = 10;
  const Mat a = annihilation(FockSpace(dim)).matrix();
  const Mat comm = a * a.adjoint() - a.adjoint() * a;
  // identity on the top-left block, truncation defect in the corner
  const Mat block = comm.topLeftCorner(dim - 1, dim - 1);
  CHECK((block - Mat::Identity(dim - 1, dim - 1)).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(comm(dim - 1, dim - 1).real() == doctest::Approx(1.0 - dim));
}

TEST_CASE("displacement identity and vacuum element") {
  const Mat d0 = displacement(Complex(0.0), FockSpace(12)).matrix();
  CHECK((d0 - Mat::Identity(12, 12)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  const Mat d = displacement(Complex(1.0), FockSpace(30)).matrix();
  CHECK(d(0, 0).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

  const Mat oracle = displacement_matexp(Complex(1.0), 60);
  CHECK((d - oracle.topLeftCorner(30, 30)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("displacement inverse composition") {
  const FockSpace space(30);
  const Mat d = displacement(Complex(0.5), space).matrix();
  const Mat dm = displacement(Complex(-0.5), space).matrix();
  // D(a) D(-a) = 1 on the interior block; the displaced tails of the top
  // ~12 levels cross the truncation edge and pick up O(1e-7) defects there
  const Mat prod = (d * dm).topLeftCorner(16, 16);
  CHECK((prod - Mat::Identity(16, 16)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("displacement analytic form vs matrix exponential over |alpha| <= 2") {
  const int dim = 30;
  for (const Complex alpha : {Complex(0.3, 0.0), Complex(0.0, 1.1),
                              Complex(-1.2, 0.7), Complex(1.4, -1.4)}) {
    const Mat analytic = displacement_matrix(alpha, dim, dim);
    const Mat oracle = displacement_matexp(alpha, 90).topLeftCorner(dim, dim);
    CHECK((analytic - oracle).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("displacement rejects untrustworthy truncation") {
  CHECK_THROWS_AS(displacement(Complex(3.0, 0.0), FockSpace(16)),
                  std::invalid_argument);
}

TEST_CASE("tensor products") {
  const Mat t = tensor(identity(FockSpace(2)), identity(FockSpace(3))).matrix();
  CHECK((t - Mat::Identity(6, 6)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  Mat diag = Mat::Zero(2, 2);
  diag(1, 1) = 1.0;
  const Operator d_op(FockSpace(2), diag);
  const Mat t2 = tensor(d_op, identity(FockSpace(2))).matrix();
  CHECK(t2(0, 0) == Complex(0.0));
  CHECK(t2(1, 1) == Complex(0.0));
  CHECK(t2(2, 2) == Complex(1.0));
  CHECK(t2(3, 3) == Complex(1.0));

  const Operator a_opt = tensor(annihilation(FockSpace(3)), identity(FockSpace(4)));
  const Operator b_mech = tensor(identity(FockSpace(3)), annihilation(FockSpace(4)));
  const Mat comm = a_opt.matrix() * b_mech.matrix() - b_mech.matrix() * a_opt.matrix();
  CHECK(comm.cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  CHECK_THROWS_AS(tensor(a_opt, identity(FockSpace(2))), std::invalid_argument);
}

TEST_CASE("kron associativity") {
  const Mat a = random_matrix(2, 1);
  const Mat b = random_matrix(3, 2);
  const Mat c = random_matrix(2, 3);
  CHECK((kron(kron(a, b), c) - kron(a, kron(b, c))).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0));
}

TEST_CASE("partial trace") {
  const DensityMatrix rho_c = random_state(2, 5, Shape{1, 2});
  const DensityMatrix rho_m = random_state(3, 7, Shape{1, 3});
  const Mat prod = kron(rho_c.matrix(), rho_m.matrix());
  const DensityMatrix joint = DensityMatrix::from_matrix(prod, Shape{2, 3});

  const DensityMatrix mech = partial_trace(joint, Mode::Mechanical);
  CHECK((mech.matrix() - rho_m.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
  const DensityMatrix opt = partial_trace(joint, Mode::Optical);
  CHECK((opt.matrix() - rho_c.matrix()).cwiseAbs().maxCoeff() <= 1e-12);

  const Mat mixed = Mat::Identity(4, 4) / 4.0;
  const DensityMatrix mm = DensityMatrix::from_matrix(mixed, Shape{2, 2});
  const DensityMatrix half = partial_trace(mm, Mode::Mechanical);
  CHECK((half.matrix() - Mat::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() <= 1e-12);

  const DensityMatrix joint2 = random_state(6, 9, Shape{2, 3});
  const DensityMatrix red = partial_trace(joint2, Mode::Mechanical);
  CHECK(red.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(partial_trace(rho_m, Mode::Mechanical), std::invalid_argument);
}

TEST_CASE("expectation values") {
  const FockSpace space(8);
  const DensityMatrix three = fock_state(3, space);
  CHECK(expectation(three, number(space)).real() == doctest::Approx(3.0));

  const FockSpace big(40);
  const DensityMatrix th = thermal_state(0.3, big);
  CHECK(expectation(th, number(big)).real() == doctest::Approx(0.3).epsilon(1e-6));

  const DensityMatrix mixed = random_state(8, 3, Shape{1, 8});
  CHECK(expectation(mixed, identity(space)).real() == doctest::Approx(1.0));
  // Hermitian observable gives a real expectation
  const Mat h = random_matrix(8, 21);
  const Operator herm(space, Mat((h + h.adjoint()) / 2.0));
  CHECK(std::abs(expectation(mixed, herm).imag()) <= 1e-10);

  CHECK_THROWS_AS(expectation(mixed, identity(FockSpace(5))), std::invalid_argument);
}

TEST_CASE("density matrix invariants") {
  CHECK_THROWS_AS(
      DensityMatrix::from_matrix(random_matrix(4, 2), Shape{1, 4}),
      NumericalError);

  Mat not_normalized = Mat::Identity(4, 4);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(not_normalized, Shape{1, 4}),
                  NumericalError);

  Mat negative = Mat::Zero(3, 3);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(negative, Shape{1, 3}),
                  NumericalError);

  const DensityMatrix th = thermal_state(0.5, FockSpace(20));
  CHECK(th.trace_error() <= 1e-12);
  CHECK(th.min_eigenvalue() >= -1e-12);
}

TEST_CASE("coherent state amplitudes") {
  const Complex alpha(0.8, -0.3);
  const Vec c = coherent_amplitudes(alpha, 25);
  CHECK(std::abs(c(0) - std::exp(-std::norm(alpha) / 2.0)) <= 1e-14);
  CHECK(std::abs(c(2) - c(0) * alpha * alpha / std::sqrt(2.0)) <= 1e-14);
  CHECK(c.norm() == doctest::Approx(1.0).epsilon(1e-10));

  const DensityMatrix coh = coherent_state(alpha, FockSpace(25));
  CHECK(expectation(coh, number(FockSpace(25))).real() ==
        doctest::Approx(std::norm(alpha)).epsilon(1e-8));
}
