#include "qdefect/detsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qdefect/error.hpp"
#include "qdefect/wall_basis.hpp"
#include "root_finding.hpp"

namespace qdefect {

namespace {

using detail::bracketed_minimum;
using detail::bracketed_root;
using detail::sign_of;

constexpr double kPi = std::numbers::pi;

// A dip shallower than this many ulps of det_noise is a double root.
constexpr double kDoubleRootNoise = 64.0 * std::numeric_limits<double>::epsilon();

Matrix2 assemble(const BoundaryCondition& bc, cplx value, cplx slope) {
  // Column 0: ψ₊ gives Φ = (−value, 0), Φ′ = (−slope, 0); column 1: ψ₋ gives (0, value), (0, slope).
  const Matrix2 I = Matrix2::identity();
  const Matrix2 phi = Matrix2::diag(-value, value);
  const Matrix2 dphi = Matrix2::diag(-slope, slope);
  return (bc.U - I) * phi + cplx(0.0, bc.L0) * ((bc.U + I) * dphi);
}

cplx det_phase(const BoundaryCondition& bc) { return std::sqrt(bc.U.det()); }

// Rounding scale of det N near a root: entries are built from v, w with
// absolute error ~ eps·(1 + |k|l)·max(|v|, |w|), and det N pairs two of them.
double det_noise(const BoundaryCondition& bc, double E) {
  const WallSolution w = wall_solution(E, bc.l);
  const Matrix2 I = Matrix2::identity();
  const double ref = (max_norm(bc.U - I) + bc.L0 * max_norm(bc.U + I)) *
                     std::max(std::abs(w.value), std::abs(w.slope));
  return (1.0 + std::sqrt(std::abs(E)) * bc.l) * ref * ref;
}

}  // namespace

Matrix2 det_matrix(const BoundaryCondition& bc, cplx k) {
  const cplx kl = k * bc.l;
  return assemble(bc, std::sin(kl), k * std::cos(kl));
}

Matrix2 junction_matrix(const BoundaryCondition& bc, double E) {
  const WallSolution w = wall_solution(E, bc.l);
  return assemble(bc, w.value, w.slope);
}

double det_secular(const BoundaryCondition& bc, double E) {
  return (junction_matrix(bc, E).det() / det_phase(bc)).real();
}

double det_secular_dE(const BoundaryCondition& bc, double E) {
  const WallSolution w = wall_solution(E, bc.l);
  const WallSolutionDerivative d = wall_solution_dE(E, bc.l);
  const Matrix2 n = assemble(bc, w.value * w.scale, w.slope * w.scale);
  const Matrix2 dn = assemble(bc, d.d_value, d.d_slope);
  // d det N = det[dN₀, N₁] + det[N₀, dN₁] (column-wise).
  const cplx dd = dn(0, 0) * n(1, 1) - n(0, 1) * dn(1, 0) + n(0, 0) * dn(1, 1) - dn(0, 1) * n(1, 0);
  return (dd / det_phase(bc)).real();
}

DetScan det_scan(const BoundaryCondition& bc, int n) {
  bc.validate();
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "det_scan: n must be >= 1");
  DetScan scan;
  const double step = kPi / (64.0 * bc.l);
  scan.step = step;
  const int j_min = -static_cast<int>(std::ceil(kBoundStateFloor / bc.l / step));
  // Each channel contributes one root per π/l; leave generous slack.
  const int j_max = 64 * (n + 8);

  auto S = [&](double tau) { return det_secular(bc, energy_from_signed(tau)); };
  auto E_of = [](double tau) { return energy_from_signed(tau); };

  auto add_root = [&](double E) { scan.roots.push_back(E); };
  auto dS = [&](double E) { return det_secular_dE(bc, E); };
  auto add_double_root = [&](double E) {
    scan.roots.push_back(E);
    scan.roots.push_back(E);
  };

  auto push = [&](double tau) {
    const double v = S(tau);
    scan.grid.push_back(tau);
    scan.values.push_back(v);
    scan.max_abs_value = std::max(scan.max_abs_value, std::abs(v));
  };

  // Examine the node i−1 (neighbors i−2, i) and the cell (i−1, i).
  auto inspect = [&](std::size_t i) {
    const auto& g = scan.grid;
    const auto& v = scan.values;
    const double a = g[i - 1], b = g[i];
    const double va = v[i - 1], vb = v[i];
    if (va == 0.0) {
      if (i >= 2 && sign_of(v[i - 2]) == sign_of(vb)) {
        add_double_root(E_of(a));
      } else {
        add_root(E_of(a));
      }
      return;
    }
    if (vb != 0.0 && sign_of(va) != sign_of(vb)) {
      add_root(E_of(bracketed_root(S, a, b, va, vb, 1e-15)));
      return;
    }
    if (i < 2 || vb == 0.0) return;
    // Dip at node i−1 without a sign change: a close pair, a double root, or nothing.
    const double vp = v[i - 2];
    if (sign_of(vp) != sign_of(va) || std::abs(va) >= std::abs(vp) || std::abs(va) >= std::abs(vb)) {
      return;
    }
    // Critical point of S inside the dip, from the analytic derivative when it
    // brackets, otherwise by minimizing the oriented S.
    const double orient = static_cast<double>(sign_of(va));
    const double Elo = E_of(g[i - 2]), Ehi = E_of(b);
    const double dlo = dS(Elo), dhi = dS(Ehi);
    double Ecrit;
    if (sign_of(dlo) != sign_of(dhi)) {
      Ecrit = bracketed_root(dS, Elo, Ehi, dlo, dhi, 1e-15);
    } else {
      auto oriented = [&](double tau) { return orient * S(tau); };
      Ecrit = E_of(bracketed_minimum(oriented, g[i - 2], b).first);
    }
    const double tcrit = signed_wavenumber(Ecrit);
    const double fmin = orient * det_secular(bc, Ecrit);
    if (std::abs(fmin) <= kDoubleRootNoise * det_noise(bc, Ecrit)) {
      add_double_root(Ecrit);
    } else if (fmin < 0.0) {
      add_root(E_of(bracketed_root(S, g[i - 2], tcrit, vp, orient * fmin, 1e-15)));
      add_root(E_of(bracketed_root(S, tcrit, b, orient * fmin, vb, 1e-15)));
    }
  };

  int extra = -1;
  for (int j = j_min; j <= j_max; ++j) {
    push(j * step);
    const std::size_t i = scan.grid.size() - 1;
    if (i >= 1) inspect(i);
    // Two more nodes after the n-th root so that pending dips are inspected.
    if (extra < 0 && static_cast<int>(scan.roots.size()) >= n && j > 0) extra = 2;
    if (extra >= 0 && extra-- == 0) {
      std::sort(scan.roots.begin(), scan.roots.end());
      return scan;
    }
  }
  throw Error(ErrorKind::ScanExhausted, "det_scan reached its ceiling before finding all roots");
}

std::vector<EigenLevel> det_spectrum(const BoundaryCondition& bc, int n) {
  const DetScan scan = det_scan(bc, n);
  std::vector<EigenLevel> out;
  for (int i = 0; i < n && i < static_cast<int>(scan.roots.size()); ++i) {
    double E = scan.roots[i];
    if (std::abs(E) <= 1e-18 / (bc.l * bc.l)) E = 0.0;
    out.push_back(EigenLevel::from_energy(E, ChannelTag::none, i));
  }
  for (auto& lv : out) {
    lv.degenerate_with.reset();
  }
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    if (same_energy(out[i].E, out[i + 1].E)) {
      out[i].degenerate_with = static_cast<int>(i + 1);
      out[i + 1].degenerate_with = static_cast<int>(i);
    }
  }
  return out;
}

}  // namespace qdefect
