#include "qdefect/isospectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdefect/boundary_condition.hpp"
#include "qdefect/detsolver.hpp"
#include "qdefect/error.hpp"
#include "qdefect/spectrum.hpp"

namespace qdefect {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> spectrum_with(const BoundaryCondition& bc, int n, SolverChoice solver,
                                  int n_interior) {
  switch (solver) {
    case SolverChoice::channel: return energies(solve_spectrum(bc, n).levels);
    case SolverChoice::determinant: return energies(det_spectrum(bc, n));
    case SolverChoice::fd: return fd_spectrum(bc, n, n_interior).levels;
  }
  return {};
}

}  // namespace

SphereGrid SphereGrid::make(int n_mu, int n_nu) {
  if (n_mu < 1 || n_nu < 1) throw Error(ErrorKind::InvalidArgument, "sphere grid needs >= 1 point per axis");
  SphereGrid g;
  for (int i = 1; i <= n_mu; ++i) g.mu_points.push_back(kPi * i / (n_mu + 1));
  for (int j = 0; j < n_nu; ++j) g.nu_points.push_back(2.0 * kPi * j / n_nu);
  return g;
}

std::vector<std::pair<double, double>> SphereGrid::points() const {
  std::vector<std::pair<double, double>> pts{{0.0, 0.0}, {kPi, 0.0}};
  for (double mu : mu_points) {
    for (double nu : nu_points) pts.emplace_back(mu, nu);
  }
  return pts;
}

std::string_view to_string(SolverChoice s) {
  switch (s) {
    case SolverChoice::channel: return "channel";
    case SolverChoice::determinant: return "det";
    case SolverChoice::fd: return "fd";
  }
  return "det";
}

std::optional<SolverChoice> parse_solver(std::string_view name) {
  if (name == "channel") return SolverChoice::channel;
  if (name == "det" || name == "determinant") return SolverChoice::determinant;
  if (name == "fd") return SolverChoice::fd;
  return std::nullopt;
}

std::vector<Matrix2> isospectral_family(const UnitaryParams& d, const SphereGrid& grid) {
  std::vector<Matrix2> out;
  for (const auto& [mu, nu] : grid.points()) {
    out.push_back(params_to_matrix({d.xi, d.rho, mu, nu}));
  }
  return out;
}

IsoReport check_isospectral(const UnitaryParams& d, const SphereGrid& grid, int n_levels,
                            SolverChoice solver, double L0, double l, int n_interior) {
  if (n_levels < 1) throw Error(ErrorKind::InvalidArgument, "n_levels must be >= 1");
  IsoReport rep;
  rep.base_params = {d.xi, d.rho, 0.0, 0.0};
  rep.n_levels_checked = n_levels;
  rep.solver_used = solver;
  rep.relative = solver == SolverChoice::fd;

  const auto base = spectrum_with(BoundaryCondition::from_params(rep.base_params, L0, l), n_levels,
                                  solver, n_interior);
  const auto pts = grid.points();
  const auto family = isospectral_family(d, grid);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto member = spectrum_with(BoundaryCondition::make(family[i], L0, l), n_levels, solver,
                                      n_interior);
    double dev = 0.0;
    for (int j = 0; j < n_levels; ++j) {
      double e = std::abs(member[j] - base[j]);
      if (rep.relative) e /= std::max(1.0, std::abs(base[j]));
      dev = std::max(dev, e);
    }
    if (i == 0 || dev > rep.max_level_deviation) {
      rep.max_level_deviation = dev;
      rep.worst_point = pts[i];
    }
  }
  rep.n_members = static_cast<int>(family.size());
  return rep;
}

std::vector<Matrix2> parity_family(const Matrix2& u, const std::vector<Direction3>& directions) {
  std::vector<Matrix2> out;
  out.reserve(directions.size());
  for (const auto& c : directions) out.push_back(parity_conjugate(u, c));
  return out;
}

std::optional<UnitaryParams> orbit_point(const UnitaryParams& d, const Matrix2& target, double tol) {
  const Matrix2 dm = diagonal_part(d);
  if (std::abs(dm.trace() - target.trace()) > tol || std::abs(dm.det() - target.det()) > tol) {
    return std::nullopt;
  }
  const UnitaryParams canonical = matrix_to_params(dm);
  UnitaryParams p = matrix_to_params(target);
  p.xi = canonical.xi;
  p.rho = canonical.rho;
  if (max_abs_diff(params_to_matrix(p), target) > tol) return std::nullopt;
  return p;
}

}  // namespace qdefect
