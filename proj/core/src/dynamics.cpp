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

#include "phonock/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

namespace phonock {

namespace {

constexpr Complex kImag(0.0, 1.0);

SparseMat sparse_of(const Mat& m) { return m.sparseView(); }

SparseMat sparse_identity(int n) {
  SparseMat id(n, n);
  id.setIdentity();
  return id;
}

double max_abs_coeff(const SparseMat& m) {
  double v = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMat::InnerIterator it(m, k); it; ++it)
      v = std::max(v, std::abs(it.value()));
  return v;
}

}  // namespace

Mat dissipator(const Operator& op, const DensityMatrix& rho) {
  if (!(op.shape() == rho.shape()))
    throw std::invalid_argument("dissipator: shape mismatch");
  const Mat& o = op.matrix();
  const Mat& r = rho.matrix();
  const Mat odag_o = o.adjoint() * o;
  return 2.0 * o * r * o.adjoint() - r * odag_o - odag_o * r;
}

Liouvillian build_liouvillian(
    const std::optional<Operator>& hamiltonian,
    const std::vector<std::pair<double, Operator>>& weighted_jumps) {
  Shape shape;
  if (hamiltonian)
    shape = hamiltonian->shape();
  else if (!weighted_jumps.empty())
    shape = weighted_jumps.front().second.shape();
  else
    throw std::invalid_argument("build_liouvillian: nothing to assemble");
  const int dim = shape.total();
  const SparseMat id = sparse_identity(dim);

  SparseMat liouv(dim * dim, dim * dim);
  if (hamiltonian) {
    if (!(hamiltonian->shape() == shape))
      throw std::invalid_argument("build_liouvillian: Hamiltonian shape mismatch");
    const SparseMat h = sparse_of(hamiltonian->matrix());
    const SparseMat ht = sparse_of(hamiltonian->matrix().transpose());
    // vec(H rho) = (I (x) H) vec, vec(rho H) = (H^T (x) I) vec
    liouv = -kImag * (Eigen::kroneckerProduct(id, h).eval() -
                      Eigen::kroneckerProduct(ht, id).eval());
  }
  for (const auto& [weight, jump] : weighted_jumps) {
    if (weight == 0.0) continue;
    if (!(jump.shape() == shape))
      throw std::invalid_argument("build_liouvillian: jump operator shape mismatch");
    const SparseMat o = sparse_of(jump.matrix());
    const SparseMat o_conj = sparse_of(jump.matrix().conjugate());
    const SparseMat odag_o = sparse_of(jump.matrix().adjoint() * jump.matrix());
    const SparseMat odag_o_t = SparseMat(odag_o.transpose());
    SparseMat term = 2.0 * Eigen::kroneckerProduct(o_conj, o).eval();
    term -= Eigen::kroneckerProduct(odag_o_t, id).eval();
    term -= Eigen::kroneckerProduct(id, odag_o).eval();
    liouv += Complex(weight) * term;
  }
  liouv.makeCompressed();

  // Trace preservation: vec(I) must lie in the left null space.
  Vec trace_vec = Vec::Zero(dim * dim);
  for (int i = 0; i < dim; ++i) trace_vec(i + i * dim) = 1.0;
  const Vec left = SparseMat(liouv.transpose()) * trace_vec;
  const double resid = left.cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, max_abs_coeff(liouv));
  if (resid > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "build_liouvillian: trace-preservation residual " << resid;
    throw NumericalError(msg.str());
  }
  return Liouvillian{std::move(liouv), dim, shape};
}

Liouvillian full_liouvillian(const SystemParams& params) {
  params.validate();
  const FockSpace opt(params.N_c);
  const FockSpace mech(params.N_m);
  const Operator a_full = tensor(annihilation(opt), identity(mech));
  const Operator b_full = tensor(identity(opt), annihilation(mech));

  std::vector<std::pair<double, Operator>> jumps;
  const double optical_decay =
      params.nbar_c > 0.0 ? params.kappa * (1.0 + params.nbar_c) : params.kappa;
  jumps.emplace_back(optical_decay / 2.0, a_full);
  if (params.nbar_c > 0.0)
    jumps.emplace_back(params.kappa * params.nbar_c / 2.0, a_full.adjoint());
  jumps.emplace_back(params.gamma * (1.0 + params.nbar_m) / 2.0, b_full);
  if (params.nbar_m > 0.0)
    jumps.emplace_back(params.gamma * params.nbar_m / 2.0, b_full.adjoint());
  return build_liouvillian(hamiltonian_rotating(params), jumps);
}

Liouvillian effective_liouvillian(const SystemParams& params, double eta, int M,
                                  bool restrict_to_ub) {
  params.require_rwa_regime();
  if (params.kappa <= 0.0)
    throw std::invalid_argument("effective_liouvillian: kappa must be > 0");
  const Operator b_ladder = b_ladder_operator(params, eta, M);
  const int dim = restrict_to_ub ? M + 1 : params.N_m;
  const FockSpace space(dim);
  const Operator pump(space,
                      Mat(b_ladder.matrix().adjoint().topLeftCorner(dim, dim)));
  const Operator b_op = annihilation(space);

  // (1/2) D[(2/sqrt(kappa)) B^dag] gives the per-link pumping rate
  // 4 |chi(m)|^2 (m+1) / kappa of the eliminated cavity.
  std::vector<std::pair<double, Operator>> jumps;
  jumps.emplace_back(2.0 / params.kappa, pump);
  jumps.emplace_back(params.gamma * (1.0 + params.nbar_m) / 2.0, b_op);
  if (params.nbar_m > 0.0)
    jumps.emplace_back(params.gamma * params.nbar_m / 2.0, b_op.adjoint());
  return build_liouvillian(std::nullopt, jumps);
}

double kappa_eff(const SystemParams& params, double eta, int M) {
  if (params.kappa <= 0.0)
    throw std::invalid_argument("kappa_eff: kappa must be > 0");
  const double ref = chi_ref(params, eta, M);
  return 4.0 * ref * ref / params.kappa;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = kB1 - 5179.0 / 57600, kE3 = kB3 - 7571.0 / 16695,
                 kE4 = kB4 - 393.0 / 640, kE5 = kB5 + 92097.0 / 339200,
                 kE6 = kB6 - 187.0 / 2100, kE7 = -1.0 / 40;

double error_norm(const Vec& err, const Vec& y0, const Vec& y1, double atol,
                  double rtol) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double scale =
        atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    worst = std::max(worst, std::abs(err(i)) / scale);
  }
  return worst;
}

double l1_norm(const Vec& v) { return v.cwiseAbs().sum(); }

}  // namespace

DensityMatrix EvolutionRecord::final_state(double positivity_tol) const {
  Mat herm = (final_matrix + final_matrix.adjoint().eval()) / 2.0;
  StateCheckOptions opts;
  opts.hermiticity_tol = 1e-8;
  opts.trace_tol = 1e-6;
  opts.positivity_tol = positivity_tol;
  opts.normalize = true;
  return DensityMatrix::from_matrix(std::move(herm), shape, opts);
}

EvolutionRecord evolve(const Liouvillian& liouv, const DensityMatrix& rho0,
                       double t_final, const EvolveOptions& opts) {
  if (rho0.dim() != liouv.dim)
    throw std::invalid_argument("evolve: state does not match Liouvillian");
  if (t_final <= 0.0) throw std::invalid_argument("evolve: t_final must be > 0");
  const int dim = liouv.dim;
  const auto& L = liouv.matrix;
  const int n_samples = std::max(opts.n_samples, 1);

  EvolutionRecord rec;
  rec.shape = liouv.shape;

  Vec y = Eigen::Map<const Vec>(rho0.matrix().data(), dim * dim);
  Vec k1 = L * y;
  double h = opts.initial_step;
  if (h <= 0.0) {
    const double f_norm = k1.norm();
    h = f_norm > 0.0 ? std::min(t_final / n_samples, 0.01 * y.norm() / f_norm)
                     : t_final / n_samples;
  }

  Vec k2(dim * dim), k3(dim * dim), k4(dim * dim), k5(dim * dim), k6(dim * dim),
      k7(dim * dim), y_next(dim * dim), err(dim * dim);

  auto sample_state = [&](double t, const Vec& state) {
    const Eigen::Map<const Mat> m(state.data(), dim, dim);
    rec.times.push_back(t);
    const Complex tr = m.trace();
    const double drift = std::abs(tr - Complex(1.0));
    rec.trace_drift.push_back(drift);
    if (drift > opts.trace_tol) {
      std::ostringstream msg;
      msg << "evolve: trace drift " << drift << " at t = " << t;
      throw NumericalError(msg.str());
    }
    Mat herm = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(herm, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -opts.positivity_tol) {
      std::ostringstream msg;
      msg << "evolve: positivity violation " << min_eig << " at t = " << t;
      throw NumericalError(msg.str());
    }
    rec.purity.push_back((herm * herm).trace().real());
    double n_mech = 0.0;
    const int nm = rec.shape.mech;
    for (int i = 0; i < dim; ++i) n_mech += (i % nm) * herm(i, i).real();
    rec.n_mean.push_back(n_mech);
    if (opts.fidelity_target && !rec.shape.two_mode()) {
      const int target = *opts.fidelity_target;
      const double p = std::max(0.0, herm(target, target).real());
      rec.fidelity.push_back(std::sqrt(p));
    }
    if (opts.store_states) rec.states.push_back(Mat(m));
  };

  sample_state(0.0, y);

  double t = 0.0;
  bool fsal_fresh = true;  // k1 currently holds L*y
  for (int sample = 1; sample <= n_samples; ++sample) {
    const double t_target = t_final * sample / n_samples;
    while (t < t_target - 1e-12 * t_final) {
      const double h_step = std::min(h, t_target - t);
      if (!fsal_fresh) {
        k1 = L * y;
        fsal_fresh = true;
      }
      k2 = L * (y + h_step * (kA21 * k1)).eval();
      k3 = L * (y + h_step * (kA31 * k1 + kA32 * k2)).eval();
      k4 = L * (y + h_step * (kA41 * k1 + kA42 * k2 + kA43 * k3)).eval();
      k5 = L * (y + h_step * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4)).eval();
      k6 = L * (y + h_step * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 +
                              kA65 * k5)).eval();
      y_next = y + h_step * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
      k7 = L * y_next;
      err = h_step * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 +
                      kE7 * k7);
      const double e = error_norm(err, y, y_next, opts.atol, opts.rtol);
      if (e <= 1.0) {
        t += h_step;
        y.swap(y_next);
        k1.swap(k7);  // FSAL
        ++rec.n_steps;
        const double grow = e > 0.0 ? 0.9 * std::pow(e, -0.2) : 5.0;
        h = h_step * std::clamp(grow, 0.2, 5.0);
      } else {
        ++rec.n_rejected;
        h = h_step * std::max(0.2, 0.9 * std::pow(e, -0.2));
        if (h < 1e-13 * std::max(1.0, t)) {
          std::ostringstream msg;
          msg << "evolve: step-size collapse at t = " << t;
          throw NumericalError(msg.str());
        }
      }
      if (rec.n_steps + rec.n_rejected > 400000000L)
        throw NumericalError("evolve: step budget exhausted");
    }
    // renormalize the trace before sampling; drift checked inside
    t = t_target;
    const Eigen::Map<const Mat> m(y.data(), dim, dim);
    const Complex tr = m.trace();
    sample_state(t, y);
    y /= tr;
    fsal_fresh = false;
    if (opts.stop_at_steady) {
      const double resid = l1_norm(L * y) / l1_norm(y);
      if (resid < opts.steady_residual) {
        rec.converged = true;
        rec.residual = resid;
        break;
      }
    }
  }
  if (!rec.converged) rec.residual = l1_norm(L * y) / l1_norm(y);
  if (!opts.stop_at_steady)
    rec.converged = rec.residual < opts.steady_residual;
  rec.final_matrix = Eigen::Map<const Mat>(y.data(), dim, dim);
  return rec;
}

namespace {

struct PinnedSolve {
  Vec x;
  bool ok = false;
};

PinnedSolve solve_pinned(const SparseMat& L, int dim, int pinned_row) {
  const int big = dim * dim;
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(L.nonZeros() + dim);
  for (int k = 0; k < L.outerSize(); ++k)
    for (SparseMat::InnerIterator it(L, k); it; ++it)
      if (it.row() != pinned_row)
        trips.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < dim; ++i)
    trips.emplace_back(pinned_row, i + i * dim, Complex(1.0));
  SparseMat pinned(big, big);
  pinned.setFromTriplets(trips.begin(), trips.end());
  pinned.makeCompressed();

  Eigen::SparseLU<SparseMat, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(pinned);
  lu.factorize(pinned);
  PinnedSolve out;
  if (lu.info() != Eigen::Success) return out;
  Vec b = Vec::Zero(big);
  b(pinned_row) = 1.0;
  out.x = lu.solve(b);
  // two rounds of iterative refinement
  for (int round = 0; round < 2; ++round) {
    Vec r = b - pinned * out.x;
    out.x += lu.solve(r);
  }
  out.ok = out.x.allFinite();
  return out;
}

DensityMatrix state_from_vec(const Vec& x, const Shape& shape, int dim,
                             double positivity_tol) {
  Eigen::Map<const Mat> m(x.data(), dim, dim);
  Mat herm = (m + m.adjoint()) / 2.0;
  StateCheckOptions opts;
  opts.hermiticity_tol = 1e300;  // hermitized by construction
  opts.trace_tol = 1e300;
  opts.positivity_tol = positivity_tol;
  opts.normalize = true;
  return DensityMatrix::from_matrix(std::move(herm), shape, opts);
}

}  // namespace

DensityMatrix steady_state(const Liouvillian& liouv, const SteadyStateOptions& opts) {
  const int dim = liouv.dim;
  const int candidates[] = {0, dim * dim - 1, (dim / 2) + (dim / 2) * dim};
  PinnedSolve first;
  int used = -1;
  for (int row : candidates) {
    first = solve_pinned(liouv.matrix, dim, row);
    if (first.ok) {
      used = row;
      break;
    }
  }
  if (!first.ok)
    throw NumericalError("steady_state: pinned LU factorization failed");

  DensityMatrix rho = state_from_vec(first.x, liouv.shape, dim, opts.positivity_tol);

  const double resid = steady_residual(liouv, rho);
  if (resid > opts.residual_tol) {
    std::ostringstream msg;
    msg << "steady_state: residual ||L rho||_1/||rho||_1 = " << resid << " > "
        << opts.residual_tol;
    throw NumericalError(msg.str());
  }

  if (opts.check_degenerate) {
    const int other = used == 0 ? dim * dim - 1 : 0;
    const PinnedSolve second = solve_pinned(liouv.matrix, dim, other);
    if (second.ok) {
      const DensityMatrix rho2 =
          state_from_vec(second.x, liouv.shape, dim, opts.positivity_tol);
      const double diff =
          (rho.matrix() - rho2.matrix()).cwiseAbs().maxCoeff();
      if (diff > 1e-6) {
        std::ostringstream msg;
        msg << "steady_state: degenerate null space (two pinned solves differ by "
            << diff << "; dimension >= 2)";
        throw NumericalError(msg.str());
      }
    }
  }
  return rho;
}

double steady_residual(const Liouvillian& liouv, const DensityMatrix& rho) {
  const int dim = liouv.dim;
  const Vec y = Eigen::Map<const Vec>(rho.matrix().data(), dim * dim);
  return l1_norm(liouv.matrix * y) / l1_norm(y);
}

DensityMatrix displaced_frame_reduce(const DensityMatrix& rho_full,
                                     const SystemParams& params,
                                     double max_trace_loss) {
  const Shape& s = rho_full.shape();
  if (!s.two_mode())
    throw std::invalid_argument("displaced_frame_reduce: state is not two-mode");
  if (s.optical != params.N_c || s.mech != params.N_m)
    throw std::invalid_argument("displaced_frame_reduce: shape does not match params");
  const double eta = params.g / params.omega_m;
  const int nm = s.mech;
  Mat out = Mat::Zero(nm, nm);
  for (int c = 0; c < s.optical; ++c) {
    const Mat block = rho_full.matrix().block(c * nm, c * nm, nm, nm);
    if (c == 0) {
      out += block;  // zero photons: no conditional displacement
      continue;
    }
    const Mat d = displacement_matrix(eta * c, nm, nm);
    out += d.adjoint() * block * d;
  }
  const double trace_loss = std::abs(out.trace() - rho_full.matrix().trace());
  if (trace_loss > max_trace_loss) {
    std::ostringstream msg;
    msg << "displaced_frame_reduce: trace loss " << trace_loss
        << " (state reaches the mechanical truncation)";
    throw NumericalError(msg.str());
  }
  StateCheckOptions opts;
  opts.hermiticity_tol = 1e-9;
  opts.trace_tol = 1e-6;
  opts.positivity_tol = 1e-6;
  opts.normalize = true;
  return DensityMatrix::from_matrix(std::move(out), Shape{1, nm}, opts);
}

}  // namespace phonock
