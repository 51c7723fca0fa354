#pragma once

#include <vector>

#include "qdefect/boundary_condition.hpp"
#include "qdefect/levels.hpp"
#include "qdefect/unitary_params.hpp"

namespace qdefect {

/// One eigenphase θ of U together with the box geometry. The spectrum of the
/// defect splits into two such independent problems, one per eigenvalue of U.
struct Channel {
  double theta = 0.0;
  double l = 1.0;
  double L0 = 1.0;
};

/// F(k) = sin(kl)·sin(θ/2) + k·L₀·cos(kl)·cos(θ/2), the pole-free form of
/// 1 + kL₀ cot(kl) cot(θ/2) = 0. F(0) = 0 is spurious.
double channel_function(const Channel& ch, double k);

/// G(κ) = sinh(κl)·sin(θ/2) + κ·L₀·cosh(κl)·cos(θ/2); F continued to k = iκ.
double bound_function(const Channel& ch, double kappa);

/// H(E) = sin(θ/2)·s_E(l) + L₀·cos(θ/2)·s_E'(l): F(k)/k for E = k², G(κ)/κ
/// for E = −κ², and the threshold value at E = 0. For E < 0 the result is
/// divided by cosh(κl) (same sign, no overflow).
double channel_secular(const Channel& ch, double E);

/// l·sin(θ/2) + L₀·cos(θ/2); a zero-energy level exists iff this vanishes.
double threshold_value(const Channel& ch);

/// Lowest n levels of one channel, ascending. Bound states below
/// κ = kBoundStateFloor/l are skipped (see floored_bound_state).
std::vector<EigenLevel> solve_channel(const Channel& ch, int n,
                                      ChannelTag tag = ChannelTag::plus);

/// True if the channel's bound state lies below the reporting floor.
bool floored_bound_state(const Channel& ch);

struct Spectrum {
  std::vector<EigenLevel> levels;
  UnitaryParams bc_params;
  int count_requested = 0;
  bool truncated = false;
  int floored_bound_states = 0;
};

/// Merge of both channels; depends on U only through its eigenphases.
Spectrum solve_spectrum(const BoundaryCondition& bc, int n);

Spectrum solve_spectrum_thetas(double theta_plus, double theta_minus, double l, double L0, int n);

/// Max |E_i − E'_i| over the common prefix of two ascending level lists.
double spectral_distance(const std::vector<EigenLevel>& a, const std::vector<EigenLevel>& b);
double spectral_distance(const std::vector<double>& a, const std::vector<double>& b);

std::vector<double> energies(const std::vector<EigenLevel>& levels);

/// Sets degenerate_with on pairs of (consecutive) levels with equal energy.
void link_degenerate(std::vector<EigenLevel>& levels);

}  // namespace qdefect
