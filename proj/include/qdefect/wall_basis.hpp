#pragma once

namespace qdefect {

/// Solution of −ψ″ = Eψ that vanishes at a Dirichlet wall, written as a
/// function of the distance y from the wall: s_E(y) = sin(√E y)/√E.
///
/// s_E and its y-derivative cos(√E y) are entire in E, so one expression
/// covers E > 0 (sin), E = 0 (y) and E < 0 (sinh(κy)/κ). For E < 0 both are
/// returned divided by `scale` = cosh(κy) to stay finite; `scale` is 1 otherwise.
struct WallSolution {
  double value = 0.0;  // s_E(y) / scale
  double slope = 0.0;  // s_E'(y) / scale
  double scale = 1.0;
};

WallSolution wall_solution(double E, double y);

/// Unscaled d/dE of s_E(y) and of s_E'(y).
struct WallSolutionDerivative {
  double d_value = 0.0;
  double d_slope = 0.0;
};

WallSolutionDerivative wall_solution_dE(double E, double y);

/// ∫₀^y s_E(t)² dt.
double wall_norm_squared(double E, double y);

/// ∫₀^y s_a(t) s_b(t) dt.
double wall_overlap(double Ea, double Eb, double y);

/// Signed square root: k for E > 0, −κ for E < 0.
double signed_wavenumber(double E);
/// Inverse of signed_wavenumber: τ|τ|.
inline double energy_from_signed(double tau) { return tau < 0.0 ? -tau * tau : tau * tau; }

}  // namespace qdefect
