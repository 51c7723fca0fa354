#pragma once

// Thin wrappers over Boost.Math bracketed solvers.

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <utility>

#include "qdefect/error.hpp"

namespace qdefect::detail {

/// Root of f in [a, b] (f(a)·f(b) ≤ 0) to |Δx| ≤ rel_tol·(1 + |x|).
template <class F>
double bracketed_root(F&& f, double a, double b, double fa, double fb, double rel_tol = 1e-14) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  auto tol = [rel_tol](double lo, double hi) {
    return std::abs(hi - lo) <= rel_tol * (1.0 + std::abs(lo));
  };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
  // Pick the endpoint with the smaller residual.
  const double x1 = r.first, x2 = r.second;
  const double f1 = std::abs(f(x1)), f2 = std::abs(f(x2));
  return f1 <= f2 ? x1 : x2;
}

/// Minimum of f on [a, b]: (x*, f(x*)).
template <class F>
std::pair<double, double> bracketed_minimum(F&& f, double a, double b) {
  std::uintmax_t iters = 200;
  return boost::math::tools::brent_find_minima(f, a, b, 40, iters);
}

inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace qdefect::detail
