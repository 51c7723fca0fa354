#pragma once

#include "qdefect/matrix2.hpp"
#include "qdefect/unitary_params.hpp"

namespace qdefect {

/// Box [−l, l] with Dirichlet walls and a point defect at x = 0 fixed by
/// (U − I)Φ + iL₀(U + I)Φ′ = 0.
struct BoundaryCondition {
  Matrix2 U = Matrix2::identity();
  double L0 = 1.0;
  double l = 1.0;

  /// Throws NotUnitary or InvalidArgument.
  void validate() const;

  static BoundaryCondition make(const Matrix2& U, double L0, double l);
  static BoundaryCondition from_params(const UnitaryParams& p, double L0, double l);
};

/// Boundary data at the defect. `phi` = (φ(0₊), φ(0₋)); `dphi` holds the
/// one-sided derivatives taken toward the defect, (−φ′(0₊), φ′(0₋)).
/// With this orientation the Dirichlet-wall solutions satisfy Φ = sin(kl)·w,
/// Φ′ = k·cos(kl)·w and each eigenvalue e^{iθ} of U yields
/// 1 + kL₀ cot(kl) cot(θ/2) = 0.
struct BoundaryVectors {
  Vec2 phi{};
  Vec2 dphi{};
};

/// ‖(U − I)Φ + iL₀(U + I)Φ′‖₂.
double boundary_residual(const BoundaryCondition& bc, const BoundaryVectors& v);

/// |Φ′†Φ − Φ†Φ′|; zero iff the probability current is continuous at 0.
double current_mismatch(const BoundaryVectors& v);

}  // namespace qdefect
