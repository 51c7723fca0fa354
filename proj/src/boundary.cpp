#include "qdefect/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "qdefect/detsolver.hpp"
#include "qdefect/error.hpp"
#include "qdefect/unitary_params.hpp"
#include "qdefect/wall_basis.hpp"

namespace qdefect {

namespace {

constexpr double kSingularTol = 1e-7;
constexpr double kDoubleNullTol = 1e-8;

// b(y) and b'(y) for the level's kind.
double basis(const Eigenfunction& f, double y) {
  switch (f.kind) {
    case LevelKind::positive: return std::sin(f.k_or_kappa * y);
    case LevelKind::bound: return std::sinh(f.k_or_kappa * y);
    case LevelKind::zero: return y;
  }
  return 0.0;
}

double basis_slope(const Eigenfunction& f, double y) {
  switch (f.kind) {
    case LevelKind::positive: return f.k_or_kappa * std::cos(f.k_or_kappa * y);
    case LevelKind::bound: return f.k_or_kappa * std::cosh(f.k_or_kappa * y);
    case LevelKind::zero: return 1.0;
  }
  return 0.0;
}

// b = scale·s_E.
double basis_scale(const Eigenfunction& f) {
  return f.kind == LevelKind::zero ? 1.0 : f.k_or_kappa;
}

// Fix the global phase: largest component real and positive.
Vec2 normalize_phase(Vec2 v) {
  const double n = norm2(v);
  const cplx big = std::abs(v[0]) >= std::abs(v[1]) ? v[0] : v[1];
  const cplx rot = std::conj(big) / std::abs(big);
  return {v[0] * rot / n, v[1] * rot / n};
}

Eigenfunction make_function(const BoundaryCondition& bc, const EigenLevel& level, const Vec2& amps) {
  Eigenfunction f;
  f.E = level.E;
  f.kind = level.kind;
  f.k_or_kappa = level.kind == LevelKind::zero ? 0.0 : std::sqrt(std::abs(level.E));
  f.channel = level.channel;
  f.l = bc.l;
  f.ampR = amps[0];
  f.ampL = amps[1];
  const double c = basis_scale(f);
  const double raw = c * c * wall_norm_squared(f.E, bc.l) * (std::norm(f.ampL) + std::norm(f.ampR));
  f.norm = 1.0 / std::sqrt(raw);
  return f;
}

}  // namespace

cplx Eigenfunction::operator()(double x) const {
  if (x < 0.0) return norm * ampL * basis(*this, x + l);
  return norm * ampR * basis(*this, x - l);
}

cplx Eigenfunction::derivative(double x) const {
  if (x < 0.0) return norm * ampL * basis_slope(*this, x + l);
  return norm * ampR * basis_slope(*this, x - l);
}

BoundaryVectors boundary_vectors(const Eigenfunction& f) {
  // Right: b(−l), −b'(−l); left: b(l), b'(l). b is odd, b' even.
  const double v = basis(f, f.l);
  const double s = basis_slope(f, f.l);
  BoundaryVectors bv;
  bv.phi = {-f.norm * f.ampR * v, f.norm * f.ampL * v};
  bv.dphi = {-f.norm * f.ampR * s, f.norm * f.ampL * s};
  return bv;
}

std::vector<Eigenfunction> build_eigenfunction(const BoundaryCondition& bc, const EigenLevel& level) {
  bc.validate();
  const Matrix2 n = junction_matrix(bc, level.E);
  const WallSolution w = wall_solution(level.E, bc.l);
  const Matrix2 I = Matrix2::identity();
  const double ref = (max_norm(bc.U - I) + bc.L0 * max_norm(bc.U + I)) *
                     std::max(std::abs(w.value), std::abs(w.slope));
  const auto sv = singular_values(n);

  if (sv[0] <= kDoubleNullTol * ref) {
    // Both channels resonant: amplitude vectors diag(−1, 1)·V†e_i.
    const UnitaryParams p = matrix_to_params(bc.U);
    const Matrix2 vdag = frame(p).adjoint();
    std::vector<Eigenfunction> out;
    for (int col = 0; col < 2; ++col) {
      const Vec2 amps = normalize_phase({-vdag(0, col), vdag(1, col)});
      EigenLevel lv = level;
      lv.channel = col == 0 ? ChannelTag::plus : ChannelTag::minus;
      Eigenfunction f = make_function(bc, lv, amps);
      f.degenerate = true;
      out.push_back(f);
    }
    return out;
  }
  if (sv[1] > kSingularTol * ref) {
    throw Error(ErrorKind::NotAnEigenvalue, "junction matrix is not singular at this energy");
  }
  // Null vector from the dominant row (r0, r1): (−r1, r0).
  const double row0 = std::hypot(std::abs(n(0, 0)), std::abs(n(0, 1)));
  const double row1 = std::hypot(std::abs(n(1, 0)), std::abs(n(1, 1)));
  const int r = row0 >= row1 ? 0 : 1;
  const Vec2 amps = normalize_phase({-n(r, 1), n(r, 0)});
  return {make_function(bc, level, amps)};
}

std::vector<cplx> sample_eigenfunction(const Eigenfunction& f, std::span<const double> grid) {
  std::vector<cplx> out;
  out.reserve(grid.size());
  for (double x : grid) {
    if (!(std::abs(x) <= f.l) || x == 0.0) {
      throw Error(ErrorKind::OutOfDomain, "sample position outside [-l, l] \\ {0}");
    }
    if (x == f.l || x == -f.l) {
      out.emplace_back(0.0, 0.0);
    } else {
      out.push_back(f(x));
    }
  }
  return out;
}

cplx inner_product(const Eigenfunction& f, const Eigenfunction& g) {
  // Both halves reduce to ∫₀^l b_f b_g dy since b is odd.
  const double j = basis_scale(f) * basis_scale(g) * wall_overlap(f.E, g.E, f.l);
  const cplx amp = std::conj(f.ampL) * g.ampL + std::conj(f.ampR) * g.ampR;
  return f.norm * g.norm * j * amp;
}

}  // namespace qdefect
