#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "qdefect/error.hpp"
#include "qdefect/spectrum.hpp"

using namespace qdefect;
using oracle::pi;

namespace {

std::vector<double> ks(const std::vector<EigenLevel>& levels) {
  std::vector<double> out;
  for (const auto& lv : levels) out.push_back(lv.k_or_kappa);
  return out;
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("channel_function anchors") {
  CHECK(std::abs(channel_function({pi, 1.0, 1.0}, pi)) <= 1e-15);
  CHECK(std::abs(channel_function({0.0, 1.0, 1.0}, pi / 2)) <= 1e-15);
  for (double k : {0.3, 1.7, 4.4}) {
    const double expect = std::sqrt(0.5) * (std::sin(k) + k * std::cos(k));
    CHECK(channel_function({pi / 2, 1.0, 1.0}, k) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("channel_function agrees with the direct form for many parameters") {
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 200; ++s) {
    const double th = 2 * pi * u(rng), l = 0.2 + 2 * u(rng), L0 = 0.1 + 3 * u(rng), k = 20 * u(rng);
    CHECK(channel_function({th, l, L0}, k) ==
          doctest::Approx(oracle::channel_f(th, l, L0, k)).epsilon(1e-12).scale(1 + k * L0));
  }
}

TEST_CASE("bound_function has no root for the Dirichlet and Neumann channels") {
  for (double kappa : {1e-3, 0.5, 3.0, 40.0}) {
    CHECK(bound_function({pi, 1.0, 1.0}, kappa) > 0.0);
    CHECK(bound_function({0.0, 1.0, 1.0}, kappa) > 0.0);
  }
}

TEST_CASE("bound state existence near theta = 3pi/2 follows the threshold sign") {
  for (double th : {1.5 * pi + 0.4, 1.5 * pi - 0.4}) {
    CAPTURE(th);
    const Channel ch{th, 1.0, 1.0};
    const double eps = threshold_value(ch);
    CHECK(eps == doctest::Approx(std::sin(th / 2) + std::cos(th / 2)));
    const auto ref = oracle::scan_roots([&](double x) { return oracle::channel_g(th, 1.0, 1.0, x); },
                                        1e-9, 1e-3, 1, 50.0);
    const auto lv = solve_channel(ch, 3);
    REQUIRE(lv.size() == 3);
    if (eps > 0.0) {
      REQUIRE(ref.size() == 1);
      CHECK(lv[0].kind == LevelKind::bound);
      CHECK(lv[0].k_or_kappa == doctest::Approx(ref[0]).epsilon(1e-12));
      CHECK(lv[0].E == doctest::Approx(-ref[0] * ref[0]).epsilon(1e-12));
      CHECK(lv[1].kind == LevelKind::positive);
    } else {
      CHECK(ref.empty());
      CHECK(lv[0].kind == LevelKind::positive);
    }
  }
}

TEST_CASE("solve_channel closed-form anchors") {
  const auto dir = solve_channel({pi, 1.0, 1.0}, 3);
  const auto neu = solve_channel({0.0, 1.0, 1.0}, 3);
  for (int m = 0; m < 3; ++m) {
    CHECK(std::abs(dir[m].k_or_kappa - (m + 1) * pi) <= 1e-12);
    CHECK(std::abs(dir[m].E - (m + 1) * (m + 1) * pi * pi) <= 1e-10);
    CHECK(std::abs(neu[m].k_or_kappa - (m + 0.5) * pi) <= 1e-12);
    CHECK(dir[m].index == m);
  }
}

TEST_CASE("solve_channel at theta = pi/2 reproduces tan k = -k") {
  const auto ref = oracle::scan_roots([](double k) { return std::sin(k) + k * std::cos(k); }, 1e-6, 1e-3, 3);
  const auto lv = solve_channel({pi / 2, 1.0, 1.0}, 3);
  REQUIRE(ref.size() == 3);
  CHECK(ref[0] == doctest::Approx(2.02875783811043).epsilon(1e-13));
  CHECK(ref[1] == doctest::Approx(4.91318043943488).epsilon(1e-13));
  for (int m = 0; m < 3; ++m) CHECK(std::abs(lv[m].k_or_kappa - ref[m]) <= 1e-12);
}

TEST_CASE("solve_channel roots match an independent scan for random channels") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 60; ++s) {
    const double th = 2 * pi * u(rng), l = 0.3 + 2 * u(rng), L0 = 0.1 + 2 * u(rng);
    const Channel ch{th, l, L0};
    const auto lv = solve_channel(ch, 8);
    std::vector<double> pos;
    for (const auto& x : lv) {
      if (x.kind == LevelKind::positive) pos.push_back(x.k_or_kappa);
    }
    const auto ref = oracle::scan_roots([&](double k) { return oracle::channel_f(th, l, L0, k) / k; }, 1e-7,
                                        1e-3 / l, static_cast<int>(pos.size()));
    REQUIRE(ref.size() == pos.size());
    for (std::size_t m = 0; m < pos.size(); ++m) {
      CHECK(std::abs(pos[m] - ref[m]) <= 1e-10 * (1 + ref[m]));
    }
  }
}

TEST_CASE("reported roots satisfy the pole-free equation") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 100; ++s) {
    const Channel ch{2 * pi * u(rng), 0.5 + u(rng), 0.2 + u(rng)};
    for (const auto& lv : solve_channel(ch, 10)) {
      if (lv.kind == LevelKind::positive) {
        const double r = lv.k_or_kappa;
        CHECK(std::abs(channel_function(ch, r)) <= 1e-10 * (1 + r * ch.L0));
      } else if (lv.kind == LevelKind::bound) {
        const double r = lv.k_or_kappa;
        CHECK(std::abs(bound_function(ch, r)) / std::cosh(r * ch.l) <= 1e-10 * (1 + r * ch.L0));
      }
    }
  }
}

TEST_CASE("root count equals the sign-change count of F") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 40; ++s) {
    const double th = 2 * pi * u(rng), l = 0.5 + u(rng), L0 = 0.2 + u(rng);
    const Channel ch{th, l, L0};
    const auto lv = solve_channel(ch, 14);
    const double a = 0.37 / l, b = 9.1 * pi / l;
    const int reported = static_cast<int>(std::count_if(lv.begin(), lv.end(), [&](const EigenLevel& x) {
      return x.kind == LevelKind::positive && x.k_or_kappa > a && x.k_or_kappa < b;
    }));
    const double step = std::min(pi / (64 * l), (b - a) / 1000);
    CHECK(reported ==
          oracle::sign_changes([&](double k) { return oracle::channel_f(th, l, L0, k); }, a, b, step));
  }
}

TEST_CASE("at most one root per bracket [m pi/l, (m+1) pi/l]") {
  for (int j = 0; j < 64; ++j) {
    const Channel ch{2 * pi * j / 64, 1.0, 0.8};
    const auto lv = solve_channel(ch, 12);
    std::vector<double> pos;
    for (const auto& x : lv) {
      if (x.kind == LevelKind::positive) pos.push_back(x.k_or_kappa);
    }
    for (std::size_t m = 1; m < pos.size(); ++m) {
      CHECK(pos[m] - pos[m - 1] > 0.0);
      CHECK(pos[m] - pos[m - 1] < 2 * pi);
      // Roots sitting on a bracket edge (θ = π gives k = mπ) belong to the upper bracket.
      CHECK(std::floor(pos[m] / pi + 1e-9) != std::floor(pos[m - 1] / pi + 1e-9));
    }
  }
}

TEST_CASE("zero-energy level appears exactly at the threshold") {
  // l sin(θ/2) + L₀ cos(θ/2) = 0 ⇔ tan(θ/2) = −L₀/l.
  const double l = 1.3, L0 = 0.7;
  const double th = 2 * (pi - std::atan(L0 / l));
  const Channel ch{th, l, L0};
  CHECK(std::abs(threshold_value(ch)) <= 1e-14);
  const auto lv = solve_channel(ch, 3);
  CHECK(lv[0].kind == LevelKind::zero);
  CHECK(lv[0].E == 0.0);
  CHECK(lv[1].kind == LevelKind::positive);
  // Slightly off the threshold: a shallow bound state on one side, none on the other.
  const auto below = solve_channel({th + 1e-4, l, L0}, 2);
  const auto above = solve_channel({th - 1e-4, l, L0}, 2);
  const bool b1 = below[0].kind == LevelKind::bound, b2 = above[0].kind == LevelKind::bound;
  CHECK(b1 != b2);
  CHECK(std::abs((b1 ? below : above)[0].E) < 1e-2);
  CHECK((b1 ? above : below)[0].E > 0.0);
}

TEST_CASE("bound-state existence boundary is the threshold condition") {
  // Map the boundary by bisection in θ on "has a bound state" and compare with ε = 0.
  const double l = 1.0, L0 = 0.6;
  auto has_bound = [&](double th) { return solve_channel({th, l, L0}, 1)[0].kind != LevelKind::positive; };
  // θ = π + 0.5 has κ ≈ 6.5, well above the floor; θ = 2π − 0.01 has ε < 0.
  double a = pi + 0.5, b = 2 * pi - 0.01;
  REQUIRE(has_bound(a) != has_bound(b));
  for (int it = 0; it < 60; ++it) {
    const double m = 0.5 * (a + b);
    (has_bound(m) == has_bound(a) ? a : b) = m;
  }
  const double th_exact = 2 * (pi - std::atan(L0 / l));
  CHECK(std::abs(0.5 * (a + b) - th_exact) <= 1e-8);
  for (int j = 0; j < 200; ++j) {
    const double th = 2 * pi * (j + 0.5) / 200;
    const auto lv = solve_channel({th, l, L0}, 2);
    const int bound = static_cast<int>(std::count_if(lv.begin(), lv.end(), [](const EigenLevel& x) {
      return x.kind == LevelKind::bound;
    }));
    CHECK(bound <= 1);
    const double c = std::cos(th / 2), eps = threshold_value({th, l, L0});
    const bool exists = c < 0 && eps > 0;
    const bool floored = floored_bound_state({th, l, L0});
    if (floored) CHECK(exists);
    CHECK((bound == 1) == (exists && !floored));
  }
}

TEST_CASE("deep bound states are floored") {
  // θ = 3π/2: κ·L₀ ≈ tanh(κl), so κ ≈ 1/L₀ = 100.
  const Channel ch{1.5 * pi, 1.0, 0.01};
  CHECK(floored_bound_state(ch));
  const auto lv = solve_channel(ch, 2);
  CHECK(lv[0].kind == LevelKind::positive);
  CHECK_FALSE(floored_bound_state({1.5 * pi + 0.4, 1.0, 1.0}));
}

TEST_CASE("solve_spectrum merges channels") {
  SUBCASE("U = -I is doubly degenerate") {
    const auto sp = solve_spectrum(BoundaryCondition::from_params({pi, 0, 0, 0}, 1, 1), 4);
    const double e[] = {pi * pi, pi * pi, 4 * pi * pi, 4 * pi * pi};
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(sp.levels[i].E - e[i]) <= 1e-10);
      CHECK(sp.levels[i].degenerate_with.has_value());
    }
    CHECK(*sp.levels[0].degenerate_with == 1);
  }
  SUBCASE("Dirichlet and Neumann channels interleave") {
    const auto sp = solve_spectrum(BoundaryCondition::from_params({pi / 2, pi / 2, 0, 0}, 1, 1), 4);
    const auto k = ks(sp.levels);
    const double expect[] = {pi / 2, pi, 1.5 * pi, 2 * pi};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(k[i] - expect[i]) <= 1e-12);
    CHECK(sp.levels[0].channel == ChannelTag::minus);
    CHECK(sp.levels[1].channel == ChannelTag::plus);
    for (const auto& lv : sp.levels) CHECK_FALSE(lv.degenerate_with.has_value());
  }
}

TEST_CASE("spectrum ignores the frame") {
  std::mt19937_64 rng(24);
  for (int s = 0; s < 20; ++s) {
    auto p = oracle::random_params(rng);
    const auto a = solve_spectrum(BoundaryCondition::from_params(p, 1, 1), 10);
    p.mu = 0.0;
    p.nu = 0.0;
    const auto b = solve_spectrum(BoundaryCondition::from_params(p, 1, 1), 10);
    CHECK(spectral_distance(a.levels, b.levels) <= 1e-12);
  }
}

TEST_CASE("swapping theta+ and theta- exchanges the channel tags only") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(0.0, 2 * pi);
  for (int s = 0; s < 50; ++s) {
    const double a = u(rng), b = u(rng);
    const auto x = solve_spectrum_thetas(a, b, 1.0, 1.0, 10);
    const auto y = solve_spectrum_thetas(b, a, 1.0, 1.0, 10);
    CHECK(spectral_distance(x.levels, y.levels) <= 1e-12);
    for (std::size_t i = 0; i < x.levels.size(); ++i) {
      if (x.levels[i].degenerate_with) continue;
      CHECK(x.levels[i].channel != y.levels[i].channel);
    }
  }
}

TEST_CASE("invalid requests throw") {
  CHECK_THROWS_AS(solve_channel({1.0, 1.0, 1.0}, 0), Error);
  CHECK_THROWS_AS(solve_channel({1.0, -1.0, 1.0}, 2), Error);
  CHECK_THROWS_AS(solve_channel({1.0, 1.0, 0.0}, 2), Error);
  CHECK_THROWS_AS(BoundaryCondition::make(Matrix2{1.0, 1.0, 0.0, 1.0}, 1, 1), Error);
}

TEST_CASE("spectral_distance and degeneracy linking") {
  CHECK(spectral_distance(std::vector<double>{1, 2, 3}, std::vector<double>{3, 1, 2.5}) ==
        doctest::Approx(0.5));
  std::vector<EigenLevel> lv{EigenLevel::from_energy(1.0, ChannelTag::plus, 0),
                             EigenLevel::from_energy(1.0 + 1e-12, ChannelTag::minus, 0),
                             EigenLevel::from_energy(2.0, ChannelTag::plus, 1)};
  link_degenerate(lv);
  CHECK(lv[0].degenerate_with == 1);
  CHECK(lv[1].degenerate_with == 0);
  CHECK_FALSE(lv[2].degenerate_with.has_value());
  const auto b = EigenLevel::from_energy(-4.0, ChannelTag::minus, 0);
  CHECK(b.kind == LevelKind::bound);
  CHECK(b.k_or_kappa == 2.0);
}

}  // TEST_SUITE
