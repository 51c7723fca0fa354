#include "qdefect/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdefect/wall_basis.hpp"
#include "root_finding.hpp"

namespace qdefect {

namespace {

using detail::bracketed_root;
using detail::sign_of;

constexpr double kPi = std::numbers::pi;

struct HalfAngles {
  double s;  // sin(θ/2) ≥ 0 for θ ∈ [0, 2π)
  double c;  // cos(θ/2)
};

HalfAngles half_angles(double theta) {
  const double h = 0.5 * wrap_angle(theta);
  return {std::sin(h), std::cos(h)};
}

double threshold_tolerance(const Channel& ch) { return 1e-12 * (ch.l + ch.L0); }

// tanh(x)/x with the removable singularity filled in.
double tanhc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 3.0 : std::tanh(x) / x; }

// H(−κ²)/cosh(κl) for the bound-state search.
double bound_secular(const Channel& ch, const HalfAngles& h, double kappa) {
  return h.s * ch.l * tanhc(kappa * ch.l) + ch.L0 * h.c;
}

double positive_secular(const Channel& ch, const HalfAngles& h, double k) {
  const double x = k * ch.l;
  const double sinc = std::abs(x) < 1e-8 ? ch.l * (1.0 - x * x / 6.0) : std::sin(x) / k;
  return h.s * sinc + ch.L0 * h.c * std::cos(x);
}

}  // namespace

double channel_function(const Channel& ch, double k) {
  const HalfAngles h = half_angles(ch.theta);
  return std::sin(k * ch.l) * h.s + k * ch.L0 * std::cos(k * ch.l) * h.c;
}

double bound_function(const Channel& ch, double kappa) {
  const HalfAngles h = half_angles(ch.theta);
  return std::sinh(kappa * ch.l) * h.s + kappa * ch.L0 * std::cosh(kappa * ch.l) * h.c;
}

double channel_secular(const Channel& ch, double E) {
  const HalfAngles h = half_angles(ch.theta);
  const WallSolution w = wall_solution(E, ch.l);
  return h.s * w.value + ch.L0 * h.c * w.slope;
}

double threshold_value(const Channel& ch) {
  const HalfAngles h = half_angles(ch.theta);
  return ch.l * h.s + ch.L0 * h.c;
}

bool floored_bound_state(const Channel& ch) {
  const HalfAngles h = half_angles(ch.theta);
  const double eps = threshold_value(ch);
  if (!(h.c < 0.0 && eps > threshold_tolerance(ch))) return false;
  return bound_secular(ch, h, kBoundStateFloor / ch.l) > 0.0;
}

std::vector<EigenLevel> solve_channel(const Channel& ch, int n, ChannelTag tag) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "solve_channel: n must be >= 1");
  if (!(ch.l > 0.0) || !std::isfinite(ch.l)) throw Error(ErrorKind::InvalidArgument, "l must be > 0");
  if (!(ch.L0 > 0.0) || !std::isfinite(ch.L0)) throw Error(ErrorKind::InvalidArgument, "L0 must be > 0");
  if (!std::isfinite(ch.theta)) throw Error(ErrorKind::InvalidArgument, "theta must be finite");
  std::vector<EigenLevel> out;
  const HalfAngles h = half_angles(ch.theta);
  const double eps = threshold_value(ch);
  const bool at_threshold = std::abs(eps) <= threshold_tolerance(ch);

  // At most one bound state: tanh(κl)/(κl) is monotone, so the secular
  // function changes sign once on (0, ∞) when cos(θ/2) < 0 < eps.
  if (at_threshold) {
    out.push_back(EigenLevel::from_energy(0.0, tag, 0));
  } else if (h.c < 0.0 && eps > 0.0) {
    const double kmax = kBoundStateFloor / ch.l;
    const double g_hi = bound_secular(ch, h, kmax);
    if (g_hi <= 0.0) {
      auto g = [&](double kappa) { return bound_secular(ch, h, kappa); };
      const double kappa = bracketed_root(g, 0.0, kmax, eps, g_hi, 1e-15);
      EigenLevel lv = EigenLevel::from_energy(-kappa * kappa, tag, 0);
      lv.k_or_kappa = kappa;
      out.push_back(lv);
    }
  }

  // Positive roots: scan H(k²) = F(k)/k, whose value at k → 0 is eps.
  const double step = kPi / (64.0 * ch.l);
  auto p = [&](double k) { return positive_secular(ch, h, k); };
  double k_prev = 0.0;
  double p_prev = eps;
  int j = 0;
  if (at_threshold) {
    j = 1;
    k_prev = step;
    p_prev = p(k_prev);
  }
  while (static_cast<int>(out.size()) < n) {
    ++j;
    const double k = j * step;
    const double pk = p(k);
    if (p_prev == 0.0) {
      // Exact grid hit on the previous node: already recorded.
    } else if (pk == 0.0) {
      out.push_back(EigenLevel::from_energy(k * k, tag, 0));
      out.back().k_or_kappa = k;
    } else if (sign_of(pk) != sign_of(p_prev)) {
      const double root = bracketed_root(p, k_prev, k, p_prev, pk, 1e-15);
      out.push_back(EigenLevel::from_energy(root * root, tag, 0));
      out.back().k_or_kappa = root;
    }
    k_prev = k;
    p_prev = pk;
  }
  for (int i = 0; i < static_cast<int>(out.size()); ++i) out[i].index = i;
  return out;
}

void link_degenerate(std::vector<EigenLevel>& levels) {
  for (auto& lv : levels) lv.degenerate_with.reset();
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    if (same_energy(levels[i].E, levels[i + 1].E)) {
      levels[i].degenerate_with = static_cast<int>(i + 1);
      levels[i + 1].degenerate_with = static_cast<int>(i);
    }
  }
}

Spectrum solve_spectrum_thetas(double theta_plus, double theta_minus, double l, double L0, int n) {
  const Channel cp{theta_plus, l, L0};
  const Channel cm{theta_minus, l, L0};
  std::vector<EigenLevel> merged = solve_channel(cp, n, ChannelTag::plus);
  const std::vector<EigenLevel> minus = solve_channel(cm, n, ChannelTag::minus);
  merged.insert(merged.end(), minus.begin(), minus.end());
  std::stable_sort(merged.begin(), merged.end(),
                   [](const EigenLevel& a, const EigenLevel& b) { return a.E < b.E; });
  if (static_cast<int>(merged.size()) > n) merged.resize(n);
  link_degenerate(merged);

  Spectrum s;
  s.levels = std::move(merged);
  s.bc_params = UnitaryParams::from_thetas(theta_plus, theta_minus);
  s.count_requested = n;
  s.truncated = static_cast<int>(s.levels.size()) < n;
  s.floored_bound_states = int(floored_bound_state(cp)) + int(floored_bound_state(cm));
  return s;
}

Spectrum solve_spectrum(const BoundaryCondition& bc, int n) {
  bc.validate();
  const UnitaryParams p = matrix_to_params(bc.U);
  Spectrum s = solve_spectrum_thetas(p.theta_plus(), p.theta_minus(), bc.l, bc.L0, n);
  s.bc_params = p;
  return s;
}

std::vector<double> energies(const std::vector<EigenLevel>& levels) {
  std::vector<double> e;
  e.reserve(levels.size());
  for (const auto& lv : levels) e.push_back(lv.E);
  return e;
}

double spectral_distance(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> x = a, y = b;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double d = 0.0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

double spectral_distance(const std::vector<EigenLevel>& a, const std::vector<EigenLevel>& b) {
  return spectral_distance(energies(a), energies(b));
}

}  // namespace qdefect
