#pragma once

#include <span>
#include <vector>

#include "qdefect/boundary_condition.hpp"
#include "qdefect/levels.hpp"

namespace qdefect {

/// Eigenfunction on [−l, l] \ {0}:
///   ψ(x) = norm·ampL·b(x + l) on (−l, 0),  ψ(x) = norm·ampR·b(x − l) on (0, l),
/// with b(y) = sin(ky) (positive), sinh(κy) (bound) or y (zero energy).
struct Eigenfunction {
  double E = 0.0;
  double k_or_kappa = 0.0;
  LevelKind kind = LevelKind::positive;
  ChannelTag channel = ChannelTag::none;
  double l = 1.0;
  cplx ampL{};
  cplx ampR{};
  double norm = 1.0;
  bool degenerate = false;

  /// No domain check; x = 0 evaluates the right-hand branch.
  cplx operator()(double x) const;
  cplx derivative(double x) const;
};

/// Values and toward-defect derivatives at 0±.
BoundaryVectors boundary_vectors(const Eigenfunction& f);

/// Eigenfunction(s) at `level.E`, amplitudes from the nullspace of N(E).
///
/// A one-dimensional nullspace gives one function. A two-dimensional one
/// (both channels resonant) gives the pair obtained from the eigenvectors of
/// U, plus channel first, both flagged degenerate. Throws NotAnEigenvalue if
/// N(E) is not singular to tolerance.
std::vector<Eigenfunction> build_eigenfunction(const BoundaryCondition& bc, const EigenLevel& level);

/// Pointwise values; throws OutOfDomain for |x| > l or x = 0.
std::vector<cplx> sample_eigenfunction(const Eigenfunction& f, std::span<const double> grid);

/// ⟨f, g⟩ = ∫ conj(f) g over both halves, in closed form.
cplx inner_product(const Eigenfunction& f, const Eigenfunction& g);

}  // namespace qdefect
