#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>

namespace qdefect {

enum class LevelKind { positive, zero, bound };
/// `none` marks levels from solvers that do not resolve channels.
enum class ChannelTag { plus, minus, none };

std::string_view to_string(LevelKind k);
std::string_view to_string(ChannelTag c);

/// One eigenvalue. Units ħ²/2m = 1: E = k² (positive), 0 (zero), −κ² (bound).
struct EigenLevel {
  double E = 0.0;
  double k_or_kappa = 0.0;
  LevelKind kind = LevelKind::positive;
  ChannelTag channel = ChannelTag::none;
  int index = 0;  // position within its channel (or within the solver's list)
  /// Position in the owning list of a level with the same energy, if any.
  std::optional<int> degenerate_with;

  static EigenLevel from_energy(double E, ChannelTag channel, int index);
};

/// Bound states deeper than κ = kBoundStateFloor / l are not reported.
inline constexpr double kBoundStateFloor = 50.0;

/// Relative energy tolerance below which two levels count as degenerate.
inline constexpr double kDegeneracyTol = 1e-10;

inline bool same_energy(double a, double b, double rel_tol = kDegeneracyTol) {
  return std::abs(a - b) <= rel_tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace qdefect
