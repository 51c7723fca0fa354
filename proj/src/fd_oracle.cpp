#include <Eigen/Dense>
#include <lapacke.h>

#include <algorithm>
#include <cmath>

#include "qdefect/detsolver.hpp"
#include "qdefect/error.hpp"

namespace qdefect {

namespace {

// Eigenvalues with |Im E| above this (relative to max(1, |E|)) are spurious.
constexpr double kImagCut = 1e-6;

}  // namespace

FdSpectrum fd_spectrum(const BoundaryCondition& bc, int n, int n_interior) {
  bc.validate();
  if (n_interior < 64) throw Error(ErrorKind::InvalidArgument, "n_interior must be >= 64");
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");

  const int N = n_interior;
  const double h = bc.l / (N + 1);
  const double inv_h2 = 1.0 / (h * h);

  // Junction values Φ = T·q with q_σ = 4u₁^σ − u₂^σ, from
  // (U − I)Φ + iL₀(U + I)(3Φ − q)/(2h) = 0.
  const Matrix2 I = Matrix2::identity();
  const cplx c(0.0, bc.L0 / (2.0 * h));
  const Matrix2 A = (bc.U - I) + 3.0 * c * (bc.U + I);
  const cplx detA = A.det();
  if (std::abs(detA) <= 1e-12 * max_norm(A) * max_norm(A)) {
    throw Error(ErrorKind::EigenSolverFailure, "junction rows are singular at this grid spacing");
  }
  const Matrix2 Ainv = Matrix2{A(1, 1), -A(0, 1), -A(1, 0), A(0, 0)} * (1.0 / detA);
  const Matrix2 T = Ainv * (c * (bc.U + I));

  // Unknowns: side σ = 0 (right, x = jh), σ = 1 (left, x = −jh), j = 1..N.
  auto idx = [N](int side, int j) { return side * N + (j - 1); };
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
  for (int side = 0; side < 2; ++side) {
    for (int j = 1; j <= N; ++j) {
      const int r = idx(side, j);
      H(r, r) = 2.0 * inv_h2;
      if (j > 1) H(r, idx(side, j - 1)) = -inv_h2;
      if (j < N) H(r, idx(side, j + 1)) = -inv_h2;
    }
    const int r = idx(side, 1);
    for (int other = 0; other < 2; ++other) {
      H(r, idx(other, 1)) += -4.0 * T(side, other) * inv_h2;
      H(r, idx(other, 2)) += T(side, other) * inv_h2;
    }
  }

  // zgeev, eigenvalues only; H is column-major as LAPACK expects.
  const lapack_int dim = 2 * N;
  Eigen::VectorXcd evals(dim);
  lapack_complex_double dummy{};
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'N', dim, reinterpret_cast<lapack_complex_double*>(H.data()), dim,
      reinterpret_cast<lapack_complex_double*>(evals.data()), &dummy, 1, &dummy, 1);
  if (info != 0) {
    throw Error(ErrorKind::EigenSolverFailure, "zgeev failed with info " + std::to_string(info));
  }

  FdSpectrum out;
  out.h = h;
  out.n_interior = N;
  for (const auto& ev : evals) {
    const double re = ev.real();
    if (std::abs(ev.imag()) > kImagCut * std::max(1.0, std::abs(re))) {
      ++out.discarded;
      continue;
    }
    out.levels.push_back(re);
  }
  std::sort(out.levels.begin(), out.levels.end());
  if (static_cast<int>(out.levels.size()) < n) {
    throw Error(ErrorKind::EigenSolverFailure, "fewer real eigenvalues than requested");
  }
  out.levels.resize(n);
  for (const auto& ev : evals) {
    if (ev.real() <= out.levels.back() && std::abs(ev.imag()) <= kImagCut * std::max(1.0, std::abs(ev.real()))) {
      out.max_imag_retained = std::max(out.max_imag_retained, std::abs(ev.imag()));
    }
  }
  return out;
}

}  // namespace qdefect
