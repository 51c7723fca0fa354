#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "qdefect/matrix2.hpp"
#include "qdefect/unitary_params.hpp"

namespace qdefect {

/// (μ, ν) sample of the isospectral sphere: both poles plus an interior
/// n_mu × n_nu product grid, μ_i = π·i/(n_mu + 1), ν_j = 2π·j/n_nu.
struct SphereGrid {
  std::vector<double> mu_points;
  std::vector<double> nu_points;

  static SphereGrid make(int n_mu = 8, int n_nu = 8);

  /// Poles first, then the interior product in row-major (μ, ν) order.
  std::vector<std::pair<double, double>> points() const;
};

enum class SolverChoice { channel, determinant, fd };

std::string_view to_string(SolverChoice s);
std::optional<SolverChoice> parse_solver(std::string_view name);

struct IsoReport {
  UnitaryParams base_params;
  double max_level_deviation = 0.0;
  std::pair<double, double> worst_point{0.0, 0.0};
  int n_levels_checked = 0;
  int n_members = 0;
  SolverChoice solver_used = SolverChoice::determinant;
  /// FD deviations are |ΔE|/max(1, |E|); exact solvers report |ΔE|.
  bool relative = false;
};

/// U = V⁻¹DV for every grid point, D fixed by (ξ, ρ) of `d`.
std::vector<Matrix2> isospectral_family(const UnitaryParams& d, const SphereGrid& grid);

/// Spectra of every family member against the spectrum of D itself.
IsoReport check_isospectral(const UnitaryParams& d, const SphereGrid& grid, int n_levels,
                            SolverChoice solver, double L0 = 1.0, double l = 1.0,
                            int n_interior = 256);

/// σUσ for each direction; throws BadDirection for non-unit c.
std::vector<Matrix2> parity_family(const Matrix2& u, const std::vector<Direction3>& directions);

/// (ξ, ρ, μ, ν) with params_to_matrix(...) = target (≤ tol) and the same
/// eigenvalues as D, or nullopt when target is not in D's conjugation orbit.
std::optional<UnitaryParams> orbit_point(const UnitaryParams& d, const Matrix2& target,
                                         double tol = 1e-10);

}  // namespace qdefect
