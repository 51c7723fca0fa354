#pragma once

#include <vector>

#include "qdefect/boundary_condition.hpp"
#include "qdefect/levels.hpp"
#include "qdefect/matrix2.hpp"

namespace qdefect {

/// M(k) = (U − I)·Φmat(k) + iL₀(U + I)·Φ′mat(k), columns from ψ₊ = sin(k(x − l))
/// on (0, l) and ψ₋ = sin(k(x + l)) on (−l, 0). Complex k = iκ gives the
/// bound-state continuation. det M(k) = 0 iff E = k² is an eigenvalue.
Matrix2 det_matrix(const BoundaryCondition& bc, cplx k);

/// N(E) = M(k)/k, entire in E (columns built on s_E(l), s_E'(l)). For E < 0
/// both columns carry the 1/cosh(κl) scaling of wall_solution.
Matrix2 junction_matrix(const BoundaryCondition& bc, double E);

/// Real secular function Re(det N(E) / sqrt(det U)). det N(E) has constant
/// phase along the real E axis, so this changes sign exactly at eigenvalues
/// of odd multiplicity. Never diagonalizes U.
double det_secular(const BoundaryCondition& bc, double E);

/// d/dE of the unscaled secular function (double-root refinement).
double det_secular_dE(const BoundaryCondition& bc, double E);

/// Scan record. `grid` holds the signed wavenumber τ (E = τ|τ|; τ < 0 is the
/// imaginary axis k = i|τ|), `values` the secular function on it.
struct DetScan {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> roots;  // energies, ascending, with multiplicity
  double max_abs_value = 0.0;
  double step = 0.0;
};

/// Scans from κ = kBoundStateFloor/l down the imaginary axis and then up the
/// real k axis with step π/(64l) until at least n roots are bracketed.
/// Throws ScanExhausted if the ceiling is reached first.
DetScan det_scan(const BoundaryCondition& bc, int n);

/// Lowest n levels from det_scan (channel tags are `none`).
std::vector<EigenLevel> det_spectrum(const BoundaryCondition& bc, int n);

struct FdSpectrum {
  double h = 0.0;
  int n_interior = 0;
  std::vector<double> levels;  // ascending real parts of retained eigenvalues
  double max_imag_retained = 0.0;
  int discarded = 0;
};

/// Finite-difference oracle: 3-point Laplacian on n_interior points per side,
/// Dirichlet at ±l, junction condition with second-order one-sided
/// derivatives eliminated into the first row of each side.
FdSpectrum fd_spectrum(const BoundaryCondition& bc, int n, int n_interior);

}  // namespace qdefect
