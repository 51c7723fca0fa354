#pragma once

#include <vector>

#include "qdefect/levels.hpp"
#include "qdefect/unitary_params.hpp"

namespace qdefect {

/// Closed loop on the spectral torus: θ±(t) = θ±(base) + 2π·w±·t, t ∈ [0, 1].
/// (μ, ν) stay fixed; they do not enter the spectrum.
struct PathSpec {
  int winding_plus = 0;
  int winding_minus = 0;
  UnitaryParams base;
  int n_steps = 256;
  int levels_tracked = 12;
  double l = 1.0;
  double L0 = 1.0;
};

struct LevelTrajectory {
  std::vector<double> t_values;
  std::vector<double> E_values;
  int start_index = 0;  // within-channel index at t = 0
  int end_index = 0;    // within-channel index at t = 1
  ChannelTag channel = ChannelTag::plus;
  /// Branch dived below κ = kBoundStateFloor/l and was dropped.
  bool floored = false;
};

struct TraceResult {
  std::vector<LevelTrajectory> trajectories;
  std::vector<double> start_spectrum;
  std::vector<double> end_spectrum;
  double min_gap_plus = 0.0;   // smallest same-channel separation seen
  double min_gap_minus = 0.0;
  int steps_taken = 0;  // accepted steps, summed over both channels
};

/// Follows the lowest `levels_tracked` levels around the loop. Throws
/// InvalidArgument, DegeneratePath (levels within 1e-8 at t = 0) or
/// ContinuationLost (step control underflow).
TraceResult trace_path(const PathSpec& path);

struct LoopShift {
  int plus = 0;
  int minus = 0;
};

/// end_index − start_index per channel, over non-floored trajectories.
/// Throws InconsistentShift if trajectories of one channel disagree.
LoopShift loop_shift(const TraceResult& trace);
LoopShift loop_shift(const PathSpec& path);

}  // namespace qdefect
