#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isscert/experiment.hpp"
#include "isscert/pde.hpp"

using namespace isscert;

namespace {
const double pi = std::numbers::pi;

SystemSpec heat(double L = pi) {
  SystemSpec s;
  s.c_diff = 1.0;
  s.bc = BoundaryCondition::dirichlet();
  s.state_norm = NormSpec::l2();
  s.L = L;
  return s;
}

GridFunction sine(int n, int mode = 1, double amp = 1.0) {
  return GridFunction(n, pi, BoundaryCondition::dirichlet(),
                      [mode, amp](double l) { return amp * std::sin(mode * l); });
}
}  // namespace

TEST_CASE("single-mode heat decay") {
  const auto traj = simulate(heat(), sine(256), {}, 1.0, 1e-3, 100);
  const double got = norm(traj.states.back()[0], NormSpec::l2());
  const double want = std::exp(-1.0) * std::sqrt(pi / 2);
  CHECK(got == doctest::Approx(want).epsilon(0.01));
}

TEST_CASE("equilibrium stays put") {
  const GridFunction z(64, pi, BoundaryCondition::dirichlet());
  const auto traj = simulate(heat(), z, {}, 0.5, 1e-3, 50);
  for (const auto& states : traj.states)
    for (int j = 0; j <= 64; ++j) CHECK(states[0][j] == 0.0);
}

TEST_CASE("supercritical linear reaction grows at the predicted rate") {
  SystemSpec s = heat();
  s.reaction = [](double x, double, double) { return 1.5 * x; };
  const auto traj = simulate(s, sine(256), {}, 2.0, 1e-3, 100);
  const double ratio = norm(traj.states.back()[0], NormSpec::l2()) /
                       norm(traj.states.front()[0], NormSpec::l2());
  CHECK(ratio == doctest::Approx(std::exp(0.5 * 2.0)).epsilon(0.05));
}

TEST_CASE("gradient-damped subsystem decays in the gradient norm") {
  const double a = 0.05, b = 40.0 * pi * pi;
  SystemSpec s = heat();
  s.reaction = [a, b](double x, double xl, double u) {
    return a * x - b * x * xl * xl + u;
  };
  s.state_norm = NormSpec::h10();
  const auto traj = simulate(s, sine(256), {}, 1.0, 1e-3, 20);
  double prev = kInf;
  for (const auto& states : traj.states) {
    const double v = norm(states[0], NormSpec::h10());
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("interconnection at the origin stays at the origin") {
  const auto ex = build_example(1, 0.05, 40.0 * pi * pi, 1.0);
  const GridFunction z(64, pi, BoundaryCondition::dirichlet());
  const auto traj = simulate_interconnection(ex.ic, z, z, 0.2, 1e-3, 20);
  for (const auto& states : traj.states)
    for (size_t s = 0; s < 2; ++s)
      for (int j = 0; j <= 64; ++j) CHECK(states[s][j] == 0.0);
}

TEST_CASE("coupled example contracts over a short horizon") {
  for (int which : {1, 2}) {
    const auto ex = build_example(which, 0.05, 40.0 * pi * pi, 1.0);
    const auto traj = simulate_interconnection(ex.ic, sine(128), sine(128, 2, 0.5),
                                               2.0, 1e-3, 100);
    const double init = product_norm(traj.states.front()[0], ex.ic.sys1.state_norm,
                                     traj.states.front()[1], ex.ic.sys2.state_norm);
    const double fin = product_norm(traj.states.back()[0], ex.ic.sys1.state_norm,
                                    traj.states.back()[1], ex.ic.sys2.state_norm);
    CHECK(fin < 0.5 * init);
  }
}

TEST_CASE("neumann heat flow conserves mass") {
  SystemSpec s = heat();
  s.bc = BoundaryCondition::neumann();
  GridFunction x0(256, pi, s.bc, [](double l) { return 2.0 + std::cos(l); });
  const auto traj = simulate(s, x0, {}, 1.0, 1e-3, 100);
  const double m0 = integrate(traj.states.front()[0]);
  const double m1 = integrate(traj.states.back()[0]);
  CHECK(m1 == doctest::Approx(m0).epsilon(1e-6));
}

TEST_CASE("grid refinement converges at second order") {
  auto solve = [](int n) {
    GridFunction x0(n, pi, BoundaryCondition::dirichlet(), [](double l) {
      return std::sin(l) + 0.5 * std::sin(2 * l);
    });
    SystemSpec s;
    s.c_diff = 1.0;
    s.bc = BoundaryCondition::dirichlet();
    s.L = pi;
    const auto traj = simulate(s, x0, {}, 0.1, 1e-5, 10000);
    return traj.states.back()[0];
  };
  // compare successive resolutions on the shared coarse nodes
  auto diff = [](const GridFunction& coarse, const GridFunction& fine) {
    double worst = 0.0;
    for (int j = 0; j <= coarse.n(); ++j)
      worst = std::max(worst, std::abs(coarse[j] - fine[2 * j]));
    return worst;
  };
  const auto a = solve(32), b = solve(64), c = solve(128);
  const double ratio = diff(a, b) / diff(b, c);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("time refinement converges at first order") {
  auto solve = [](double dt) {
    SystemSpec s;
    s.c_diff = 1.0;
    s.bc = BoundaryCondition::dirichlet();
    s.L = pi;
    // nonzero reaction so the first-order splitting error is visible
    s.reaction = [](double x, double, double) { return 0.5 * x; };
    const auto traj = simulate(s, GridFunction(128, pi, s.bc, [](double l) {
                                 return std::sin(l);
                               }),
                               {}, 0.5, dt, static_cast<int>(0.5 / dt));
    return traj.states.back()[0];
  };
  auto diff = [](const GridFunction& x, const GridFunction& y) {
    double worst = 0.0;
    for (int j = 0; j <= x.n(); ++j) worst = std::max(worst, std::abs(x[j] - y[j]));
    return worst;
  };
  const auto a = solve(4e-3), b = solve(2e-3), c = solve(1e-3);
  const double ratio = diff(a, b) / diff(b, c);
  CHECK(ratio >= 1.8);
  CHECK(ratio <= 2.2);
}

TEST_CASE("heat flow preserves nonnegativity") {
  GridFunction x0(128, pi, BoundaryCondition::dirichlet(),
                  [](double l) { return std::max(0.0, std::sin(3 * l)); });
  const auto traj = simulate(heat(), x0, {}, 0.5, 1e-3, 50);
  for (const auto& states : traj.states)
    for (int j = 0; j <= 128; ++j) CHECK(states[0][j] >= -1e-8);
}

TEST_CASE("blow-up carries failure time and partial trajectory") {
  SystemSpec s = heat();
  s.reaction = [](double x, double, double) { return 30.0 * x; };
  try {
    simulate(s, sine(64), {}, 2.0, 1e-2, 10);
    FAIL("expected blow-up");
  } catch (const BlowupError& e) {
    CHECK(e.time > 0.0);
    CHECK(e.time <= 2.0);
    CHECK(e.partial_trajectory.size() >= 1);
  }
}

TEST_CASE("argument validation") {
  SystemSpec s = heat();
  CHECK_THROWS(simulate(s, sine(64), {}, -1.0, 1e-3));
  s.reaction = [](double, double, double) { return 1.0; };  // f(0,0,0) != 0
  CHECK_THROWS(simulate(s, sine(64), {}, 1.0, 1e-3));
  CHECK_THROWS(step(heat(), sine(64), sine(64), 0.0));
}
