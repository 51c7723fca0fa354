#include "qdefect/wall_basis.hpp"

#include <algorithm>
#include <cmath>

namespace qdefect {

namespace {

// |E|y² below which power series replace the closed forms.
constexpr double kSeriesCut = 1e-4;

}  // namespace

WallSolution wall_solution(double E, double y) {
  if (E > 0.0) {
    const double k = std::sqrt(E);
    return {std::sin(k * y) / k, std::cos(k * y), 1.0};
  }
  if (E < 0.0) {
    const double kappa = std::sqrt(-E);
    const double x = kappa * y;
    return {std::tanh(x) / kappa, 1.0, std::cosh(x)};
  }
  return {y, 1.0, 1.0};
}

WallSolutionDerivative wall_solution_dE(double E, double y) {
  // d/dE cos(√E y) = −(y/2) s_E(y) holds for all E.
  const WallSolution w = wall_solution(E, y);
  const double value = w.value * w.scale;
  const double slope = w.slope * w.scale;
  WallSolutionDerivative d;
  d.d_slope = -0.5 * y * value;
  if (std::abs(E) * y * y < kSeriesCut) {
    const double y3 = y * y * y;
    d.d_value = -y3 / 6.0 + E * y3 * y * y / 60.0 - E * E * y3 * y3 * y / 1680.0;
  } else {
    d.d_value = (y * slope - value) / (2.0 * E);
  }
  return d;
}

double wall_norm_squared(double E, double y) {
  if (std::abs(E) * y * y < kSeriesCut) {
    const double y3 = y * y * y;
    return y3 / 3.0 - E * y3 * y * y / 15.0 + 2.0 * E * E * y3 * y3 * y / 315.0;
  }
  if (E > 0.0) {
    const double k = std::sqrt(E);
    return (0.5 * y - std::sin(2.0 * k * y) / (4.0 * k)) / E;
  }
  const double kappa = std::sqrt(-E);
  return (std::sinh(2.0 * kappa * y) / (4.0 * kappa) - 0.5 * y) / (-E);
}

double wall_overlap(double Ea, double Eb, double y) {
  // (s_a' s_b − s_a s_b')' = (E_b − E_a) s_a s_b and s(0) = 0.
  const double span = std::max(1.0, std::max(std::abs(Ea), std::abs(Eb)));
  if (std::abs(Ea - Eb) <= 1e-7 * span) return wall_norm_squared(0.5 * (Ea + Eb), y);
  const WallSolution a = wall_solution(Ea, y);
  const WallSolution b = wall_solution(Eb, y);
  const double wronskian = (a.slope * b.value - a.value * b.slope) * a.scale * b.scale;
  return wronskian / (Eb - Ea);
}

double signed_wavenumber(double E) { return E < 0.0 ? -std::sqrt(-E) : std::sqrt(E); }

}  // namespace qdefect
