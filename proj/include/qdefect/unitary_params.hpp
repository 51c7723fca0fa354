#pragma once

#include "qdefect/matrix2.hpp"

namespace qdefect {

/// Angles (ξ, ρ, μ, ν) with U = V⁻¹DV, D = e^{iξ}e^{iρσ₃}, V = e^{i(μ/2)σ₂}e^{i(ν/2)σ₃}.
///
/// D carries the spectral data (eigenvalues e^{iθ±}, θ± = ξ ± ρ); V is the
/// eigenvector frame, a point (μ, ν) on the sphere of isospectral partners.
struct UnitaryParams {
  double xi = 0.0;
  double rho = 0.0;
  double mu = 0.0;
  double nu = 0.0;

  /// ξ + ρ reduced into [0, 2π).
  double theta_plus() const;
  /// ξ − ρ reduced into [0, 2π).
  double theta_minus() const;

  /// Parameters with ξ = (θ₊+θ₋)/2, ρ = (θ₊−θ₋)/2 and the given frame.
  static UnitaryParams from_thetas(double theta_plus, double theta_minus, double mu = 0.0,
                                   double nu = 0.0);
};

/// Reduce an angle into [0, 2π).
double wrap_angle(double a);

/// diag(e^{iθ₊}, e^{iθ₋}).
Matrix2 diagonal_part(const UnitaryParams& p);
/// V = e^{i(μ/2)σ₂} e^{i(ν/2)σ₃}.
Matrix2 frame(const UnitaryParams& p);

Matrix2 params_to_matrix(const UnitaryParams& p);

/// Closed-form diagonalization; throws NotUnitary unless is_unitary(u, 1e-10).
///
/// Canonical form: eigenphases are taken in (−π, π] and θ₊ is the larger of
/// the two, so ρ ∈ [0, π). For a degenerate pair (ρ = 0) and for frames on a
/// pole (μ ∈ {0, π}) the undetermined angles are set to zero.
UnitaryParams matrix_to_params(const Matrix2& u);

/// σUσ with σ = Σ c_j σ_j.
Matrix2 parity_conjugate(const Matrix2& u, const Direction3& c);

/// σ_V = e^{−i(ν/2)σ₃} e^{−i(μ/2)σ₂} e^{i(ν/2)σ₃} σ₃; Hermitian, involutive, σ_V D σ_V = U.
Matrix2 sigma_v(const UnitaryParams& p);

/// Unit direction c with σ_V = Σ c_j σ_j.
Direction3 sigma_v_direction(const UnitaryParams& p);

}  // namespace qdefect
