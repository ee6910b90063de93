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

#include "phonock/fock.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace phonock {

Mat kron(const Mat& a, const Mat& b) {
  Mat c(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      c.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return c;
}

Operator::Operator(FockSpace space, Mat m) : shape_{1, space.dim}, m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() != space.dim)
    throw std::invalid_argument("Operator: matrix does not match space");
}

Operator::Operator(Shape shape, Mat m) : shape_(shape), m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() != shape.total())
    throw std::invalid_argument("Operator: matrix does not match shape");
}

static void require_same_shape(const Shape& a, const Shape& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

Operator Operator::operator+(const Operator& o) const {
  require_same_shape(shape_, o.shape_, "Operator::operator+");
  return Operator(shape_, m_ + o.m_);
}

Operator Operator::operator-(const Operator& o) const {
  require_same_shape(shape_, o.shape_, "Operator::operator-");
  return Operator(shape_, m_ - o.m_);
}

Operator Operator::operator*(const Operator& o) const {
  require_same_shape(shape_, o.shape_, "Operator::operator*");
  return Operator(shape_, m_ * o.m_);
}

Operator annihilation(FockSpace space) {
  Mat a = Mat::Zero(space.dim, space.dim);
  for (int n = 1; n < space.dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return Operator(space, std::move(a));
}

Operator creation(FockSpace space) { return annihilation(space).adjoint(); }

Operator number(FockSpace space) {
  Mat n = Mat::Zero(space.dim, space.dim);
  for (int k = 0; k < space.dim; ++k) n(k, k) = double(k);
  return Operator(space, std::move(n));
}

Operator identity(FockSpace space) {
  return Operator(space, Mat::Identity(space.dim, space.dim));
}

Mat displacement_matrix(Complex alpha, int rows, int cols) {
  Mat d = Mat::Zero(rows, cols);
  const double x = std::norm(alpha);
  if (x == 0.0) {
    for (int i = 0; i < std::min(rows, cols); ++i) d(i, i) = 1.0;
    return d;
  }
  const double expfac = std::exp(-x / 2.0);
  // Walk each diagonal m - n = off. Along a diagonal the alpha power is
  // constant, so the prefactor picks up only a real sqrt ratio per step and
  // the Laguerre factor follows its three-term recurrence in n.
  for (int off = -(cols - 1); off < rows; ++off) {
    const int k = std::abs(off);
    // <m|D|n> = prod_{j=low+1}^{high} (z/sqrt(j)) e^{-x/2} L_low^{(k)}(x)
    // with z = alpha for off >= 0 and z = -conj(alpha) for off < 0.
    const Complex z = off >= 0 ? alpha : -std::conj(alpha);
    Complex pref = expfac;
    for (int j = 1; j <= k; ++j) pref *= z / std::sqrt(double(j));
    double lag_prev = 0.0;  // L_{n-1}^{(k)}
    double lag = 1.0;       // L_n^{(k)}, starting at n = 0
    const int steps = off >= 0 ? std::min(cols, rows - off) : std::min(rows, cols - k);
    for (int n = 0; n < steps; ++n) {
      const int m = n + std::max(off, 0);
      const int nn = n + std::max(-off, 0);
      if (off >= 0)
        d(m, n) = pref * lag;
      else
        d(n, nn) = pref * lag;
      // advance prefactor and Laguerre value from n to n+1
      pref *= std::sqrt(double(n + 1) / double(n + 1 + k));
      const double lag_next =
          ((2.0 * n + 1.0 + k - x) * lag - (n + k) * lag_prev) / double(n + 1);
      lag_prev = lag;
      lag = lag_next;
    }
  }
  return d;
}

Operator displacement(Complex alpha, FockSpace space) {
  const double x = std::norm(alpha);
  if (x > space.dim / 4.0) {
    std::ostringstream msg;
    msg << "displacement: |alpha|^2 = " << x << " exceeds dim/4 = "
        << space.dim / 4.0 << "; truncated matrix would not be close to unitary";
    throw std::invalid_argument(msg.str());
  }
  return Operator(space, displacement_matrix(alpha, space.dim, space.dim));
}

Operator tensor(const Operator& optical, const Operator& mech) {
  if (optical.shape().two_mode() || mech.shape().two_mode())
    throw std::invalid_argument("tensor: factors must be single-mode");
  Shape shape{optical.dim(), mech.dim()};
  return Operator(shape, kron(optical.matrix(), mech.matrix()));
}

DensityMatrix DensityMatrix::from_matrix(Mat rho, Shape shape,
                                         const StateCheckOptions& opts) {
  if (rho.rows() != rho.cols() || rho.rows() != shape.total())
    throw std::invalid_argument("DensityMatrix: matrix does not match shape");
  const double herm = (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff();
  if (herm > opts.hermiticity_tol) {
    std::ostringstream msg;
    msg << "DensityMatrix: hermiticity violation " << herm << " > "
        << opts.hermiticity_tol;
    throw NumericalError(msg.str());
  }
  if (opts.normalize) {
    const double tr = rho.trace().real();
    if (tr <= 0.0) throw NumericalError("DensityMatrix: nonpositive trace");
    rho /= tr;
  }
  const double trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (trace_error > opts.trace_tol) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace error " << trace_error << " > " << opts.trace_tol;
    throw NumericalError(msg.str());
  }
  Mat herm_part = (rho + rho.adjoint().eval()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(herm_part, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -opts.positivity_tol) {
    std::ostringstream msg;
    msg << "DensityMatrix: minimum eigenvalue " << min_eig << " < -"
        << opts.positivity_tol;
    throw NumericalError(msg.str());
  }
  return DensityMatrix(std::move(rho), shape, trace_error, min_eig);
}

DensityMatrix DensityMatrix::pure(const Vec& psi, Shape shape) {
  if (psi.size() != shape.total())
    throw std::invalid_argument("DensityMatrix::pure: vector does not match shape");
  const double norm = psi.norm();
  if (norm == 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  Vec v = psi / norm;
  return DensityMatrix(v * v.adjoint(), shape, 0.0, 0.0);
}

DensityMatrix fock_state(int n, FockSpace space) {
  if (n < 0 || n >= space.dim)
    throw std::invalid_argument("fock_state: level outside truncation");
  Vec psi = Vec::Zero(space.dim);
  psi(n) = 1.0;
  return DensityMatrix::pure(psi, Shape{1, space.dim});
}

DensityMatrix thermal_state(double nbar, FockSpace space) {
  if (nbar < 0.0) throw std::invalid_argument("thermal_state: nbar must be >= 0");
  Mat rho = Mat::Zero(space.dim, space.dim);
  const double r = nbar / (1.0 + nbar);
  double p = 1.0;
  double total = 0.0;
  for (int n = 0; n < space.dim; ++n) {
    rho(n, n) = p;
    total += p;
    p *= r;
  }
  rho /= total;
  return DensityMatrix::from_matrix(std::move(rho), Shape{1, space.dim});
}

Vec coherent_amplitudes(Complex alpha, int dim) {
  Vec c(dim);
  c(0) = std::exp(-std::norm(alpha) / 2.0);
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
  return c;
}

DensityMatrix coherent_state(Complex alpha, FockSpace space) {
  return DensityMatrix::pure(coherent_amplitudes(alpha, space.dim),
                             Shape{1, space.dim});
}

DensityMatrix partial_trace(const DensityMatrix& rho, Mode keep) {
  const Shape& s = rho.shape();
  if (!s.two_mode())
    throw std::invalid_argument("partial_trace: state is not two-mode");
  const int nc = s.optical;
  const int nm = s.mech;
  const Mat& r = rho.matrix();
  if (keep == Mode::Mechanical) {
    Mat out = Mat::Zero(nm, nm);
    for (int c = 0; c < nc; ++c)
      out += r.block(c * nm, c * nm, nm, nm);
    return DensityMatrix::from_matrix(std::move(out), Shape{1, nm});
  }
  Mat out = Mat::Zero(nc, nc);
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j)
      out(i, j) = r.block(i * nm, j * nm, nm, nm).trace();
  return DensityMatrix::from_matrix(std::move(out), Shape{1, nc});
}

Complex expectation(const DensityMatrix& rho, const Operator& op) {
  if (!(rho.shape() == op.shape()))
    throw std::invalid_argument("expectation: dimension mismatch");
  return (op.matrix() * rho.matrix()).trace();
}

double mean_occupation(const DensityMatrix& rho) {
  double n = 0.0;
  for (int k = 0; k < rho.dim(); ++k) n += k * rho.matrix()(k, k).real();
  return n;
}

}  // namespace phonock
