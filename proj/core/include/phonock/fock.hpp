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

#ifndef PHONOCK_FOCK_HPP
#define PHONOCK_FOCK_HPP

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace phonock {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Raised when a numerical validity check fails (trace, positivity,
/// degenerate null space, step-size collapse, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated single-mode Fock space with basis |0>..|dim-1>.
struct FockSpace {
  int dim;
  explicit FockSpace(int d) : dim(d) {
    if (d < 2) throw std::invalid_argument("FockSpace: dim must be >= 2");
  }
};

/// Factor dimensions of the space an operator or state lives on.
///
/// Mode ordering is fixed project-wide: the optical index is the slow
/// (outer) index, so a two-mode basis state |n_c, n_m> sits at flat index
/// n_c * mech + n_m. Single-mode objects use optical == 1.
struct Shape {
  int optical = 1;
  int mech = 1;
  int total() const { return optical * mech; }
  bool two_mode() const { return optical > 1; }
  bool operator==(const Shape&) const = default;
};

/// Dense Kronecker product, A slow (outer) and B fast (inner).
Mat kron(const Mat& a, const Mat& b);

/// An element of the truncated operator algebra: a square complex matrix
/// together with the factorization of the space it acts on. Immutable after
/// construction; safe to share across threads.
class Operator {
 public:
  Operator(FockSpace space, Mat m);
  Operator(Shape shape, Mat m);

  const Mat& matrix() const { return m_; }
  const Shape& shape() const { return shape_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  Operator adjoint() const { return Operator(shape_, m_.adjoint()); }
  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator operator*(const Operator& o) const;
  friend Operator operator*(Complex c, const Operator& o) {
    return Operator(o.shape_, c * o.m_);
  }

 private:
  Shape shape_;
  Mat m_;
};

Operator annihilation(FockSpace space);
Operator creation(FockSpace space);
Operator number(FockSpace space);
Operator identity(FockSpace space);

/// Exact matrix elements <m|D(alpha)|n> of the displacement operator
/// exp(alpha b^dag - conj(alpha) b) on an (rows x cols) window of the Fock
/// basis. Every element is the exact infinite-dimensional value, so the
/// result is the orthogonal projection of the true unitary.
Mat displacement_matrix(Complex alpha, int rows, int cols);

/// Displacement operator on a truncated space, built from the analytic
/// closed form (no matrix exponential). Rejects |alpha|^2 > dim/4, where the
/// projected matrix is no longer close to unitary.
Operator displacement(Complex alpha, FockSpace space);

/// Kronecker product with the project-wide mode ordering: `optical` becomes
/// the slow factor. Both arguments must be single-mode.
Operator tensor(const Operator& optical, const Operator& mech);

struct StateCheckOptions {
  double hermiticity_tol = 1e-10;
  double trace_tol = 1e-8;
  double positivity_tol = 1e-8;  // min eigenvalue >= -positivity_tol
  bool normalize = false;        // divide by trace before checking
};

/// Hermitian, unit-trace, positive-semidefinite operator. Construction
/// validates the three invariants and records the measured trace error and
/// minimum eigenvalue. Values are immutable afterwards.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(Mat rho, Shape shape,
                                   const StateCheckOptions& opts = {});
  static DensityMatrix pure(const Vec& psi, Shape shape);

  const Mat& matrix() const { return rho_; }
  const Shape& shape() const { return shape_; }
  int dim() const { return static_cast<int>(rho_.rows()); }
  double trace_error() const { return trace_error_; }
  double min_eigenvalue() const { return min_eig_; }

 private:
  DensityMatrix(Mat rho, Shape shape, double trace_error, double min_eig)
      : rho_(std::move(rho)),
        shape_(shape),
        trace_error_(trace_error),
        min_eig_(min_eig) {}
  Mat rho_;
  Shape shape_;
  double trace_error_;
  double min_eig_;
};

DensityMatrix fock_state(int n, FockSpace space);
DensityMatrix thermal_state(double nbar, FockSpace space);
DensityMatrix coherent_state(Complex alpha, FockSpace space);
Vec coherent_amplitudes(Complex alpha, int dim);

enum class Mode { Optical, Mechanical };

/// Reduced state of one factor of a two-mode state. Rejects single-mode
/// input; preserves the trace.
DensityMatrix partial_trace(const DensityMatrix& rho, Mode keep);

/// Tr[rho O]. Throws on mismatched spaces.
Complex expectation(const DensityMatrix& rho, const Operator& op);

/// Tr[b^dag b rho] for a single-mode state.
double mean_occupation(const DensityMatrix& rho);

}  // namespace phonock

#endif  // PHONOCK_FOCK_HPP
