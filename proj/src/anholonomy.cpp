#include "qdefect/anholonomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qdefect/error.hpp"
#include "qdefect/spectrum.hpp"

namespace qdefect {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinStep = 1e-10;

struct ChannelTrack {
  ChannelTag tag;
  double theta0;
  int winding;
  std::vector<int> traj;  // indices into TraceResult::trajectories
};

int nearest_index(const std::vector<double>& roots, double E) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(roots.size()); ++i) {
    if (std::abs(roots[i] - E) < std::abs(roots[best] - E)) best = i;
  }
  return best;
}

double local_gap(const std::vector<double>& roots, int i) {
  double g = std::numeric_limits<double>::infinity();
  if (i > 0) g = std::min(g, roots[i] - roots[i - 1]);
  if (i + 1 < static_cast<int>(roots.size())) g = std::min(g, roots[i + 1] - roots[i]);
  return g;
}

void follow_channel(const PathSpec& path, const ChannelTrack& ct, TraceResult& out, double& min_gap) {
  if (ct.traj.empty()) return;
  int top_index = 0;
  for (int k : ct.traj) top_index = std::max(top_index, out.trajectories[k].start_index);
  const int n_solve = top_index + 2 * std::abs(ct.winding) + 4;
  const double deep = -std::pow(0.5 * kBoundStateFloor / path.l, 2);

  auto channel_at = [&](double t) { return Channel{ct.theta0 + kTwoPi * ct.winding * t, path.l, path.L0}; };
  auto roots_at = [&](double t) { return energies(solve_channel(channel_at(t), n_solve, ct.tag)); };

  std::vector<double> current;
  for (int k : ct.traj) current.push_back(out.trajectories[k].E_values.front());
  std::vector<bool> active(ct.traj.size(), true);

  const double base_dt = 1.0 / path.n_steps;
  double t = 0.0;
  double dt = base_dt;
  while (t < 1.0) {
    dt = std::min(dt, 1.0 - t);
    const double t_new = (1.0 - t - dt) < 1e-14 ? 1.0 : t + dt;
    const Channel ch = channel_at(t_new);
    const std::vector<double> roots = roots_at(t_new);

    bool ok = true;
    std::vector<double> next = current;
    std::vector<bool> next_active = active;
    std::vector<int> taken;
    for (std::size_t i = 0; i < current.size() && ok; ++i) {
      if (!active[i]) continue;
      const int r = nearest_index(roots, current[i]);
      const double jump = std::abs(roots[r] - current[i]);
      if (jump <= 0.5 * local_gap(roots, r) && std::find(taken.begin(), taken.end(), r) == taken.end()) {
        next[i] = roots[r];
        taken.push_back(r);
      } else if (current[i] < deep && floored_bound_state(ch)) {
        next_active[i] = false;
      } else {
        ok = false;
      }
    }
    if (!ok) {
      dt *= 0.5;
      if (dt < kMinStep) throw Error(ErrorKind::ContinuationLost, "step control underflow");
      continue;
    }

    for (std::size_t i = 0; i < current.size(); ++i) {
      LevelTrajectory& tr = out.trajectories[ct.traj[i]];
      if (!next_active[i]) {
        if (active[i]) tr.floored = true;
        continue;
      }
      tr.t_values.push_back(t_new);
      tr.E_values.push_back(next[i]);
    }
    std::vector<double> live;
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (next_active[i]) live.push_back(next[i]);
    }
    std::sort(live.begin(), live.end());
    for (std::size_t i = 1; i < live.size(); ++i) min_gap = std::min(min_gap, live[i] - live[i - 1]);

    current = next;
    active = next_active;
    t = t_new;
    ++out.steps_taken;
    dt = std::min(base_dt, 2.0 * dt);
  }

  const std::vector<double> final_roots = roots_at(1.0);
  for (std::size_t i = 0; i < current.size(); ++i) {
    LevelTrajectory& tr = out.trajectories[ct.traj[i]];
    if (active[i]) tr.end_index = nearest_index(final_roots, current[i]);
  }
}

}  // namespace

TraceResult trace_path(const PathSpec& path) {
  if (path.levels_tracked < 2) throw Error(ErrorKind::InvalidArgument, "levels_tracked must be >= 2");
  if (path.n_steps < 64) throw Error(ErrorKind::InvalidArgument, "n_steps must be >= 64");
  if (!(path.l > 0.0) || !(path.L0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "l and L0 must be > 0");

  const double tp0 = path.base.theta_plus();
  const double tm0 = path.base.theta_minus();
  const Spectrum start = solve_spectrum_thetas(tp0, tm0, path.l, path.L0, path.levels_tracked);
  for (std::size_t i = 0; i + 1 < start.levels.size(); ++i) {
    if (std::abs(start.levels[i + 1].E - start.levels[i].E) <= 1e-8) {
      throw Error(ErrorKind::DegeneratePath, "tracked levels are degenerate at t = 0");
    }
  }

  TraceResult out;
  out.min_gap_plus = out.min_gap_minus = std::numeric_limits<double>::infinity();
  ChannelTrack plus{ChannelTag::plus, tp0, path.winding_plus, {}};
  ChannelTrack minus{ChannelTag::minus, tm0, path.winding_minus, {}};
  for (const EigenLevel& lv : start.levels) {
    LevelTrajectory tr;
    tr.t_values = {0.0};
    tr.E_values = {lv.E};
    tr.start_index = lv.index;
    tr.end_index = lv.index;
    tr.channel = lv.channel;
    out.trajectories.push_back(tr);
    (lv.channel == ChannelTag::plus ? plus : minus).traj.push_back(static_cast<int>(out.trajectories.size() - 1));
  }
  follow_channel(path, plus, out, out.min_gap_plus);
  follow_channel(path, minus, out, out.min_gap_minus);

  out.start_spectrum = energies(start.levels);
  const Spectrum end = solve_spectrum_thetas(tp0 + kTwoPi * path.winding_plus,
                                             tm0 + kTwoPi * path.winding_minus, path.l, path.L0,
                                             path.levels_tracked);
  out.end_spectrum = energies(end.levels);
  return out;
}

LoopShift loop_shift(const TraceResult& trace) {
  LoopShift s;
  bool seen_plus = false, seen_minus = false;
  for (const auto& tr : trace.trajectories) {
    if (tr.floored) continue;
    const int d = tr.end_index - tr.start_index;
    int& slot = tr.channel == ChannelTag::plus ? s.plus : s.minus;
    bool& seen = tr.channel == ChannelTag::plus ? seen_plus : seen_minus;
    if (seen && slot != d) throw Error(ErrorKind::InconsistentShift, "levels of one channel disagree");
    slot = d;
    seen = true;
  }
  return s;
}

LoopShift loop_shift(const PathSpec& path) { return loop_shift(trace_path(path)); }

}  // namespace qdefect
