#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isscert/comparison.hpp"

using namespace isscert;

namespace {
const double pi = std::numbers::pi;

// K function without an analytic inverse, to exercise the bisection path.
ComparisonFn rational_no_inv() {
  ComparisonFn f;
  f.eval = [](double s) { return s / (1.0 + s); };
  f.tag = FnClass::K;
  f.sup_limit = 1.0;
  f.name = "s/(1+s)";
  return f;
}

ComparisonFn square_no_inv() {
  ComparisonFn f;
  f.eval = [](double s) { return s * s; };
  f.tag = FnClass::Kinf;
  f.name = "s^2 (bisect)";
  return f;
}

SubsystemGains example1_gains1() {
  SubsystemGains g;
  g.psi1 = g.psi2 = cf_log_sq();
  g.alpha = cf_rational_sq(2.0);
  g.sigma = cf_power(4.0, 8.0);
  g.kappa = cf_zero();
  return g;
}

SubsystemGains example1_gains2(double a, double b, double omega) {
  SubsystemGains g;
  g.psi1 = g.psi2 = cf_power(2.0);
  g.alpha = cf_poly2_4(2.0 * (1.0 - a - omega / 2.0), 2.0 * b / (3.0 * pi));
  g.sigma = cf_rational_sq(pi / omega);
  g.kappa = cf_zero();
  return g;
}

}  // namespace

TEST_CASE("extended inverse of named forms") {
  CHECK(extended_inverse(cf_linear(2.0), 3.0) == doctest::Approx(1.5));
  CHECK(std::isinf(extended_inverse(rational_no_inv(), 1.0)));
  CHECK(extended_inverse(square_no_inv(), 4.0) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(extended_inverse(cf_identity(), 0.0) == 0.0);
}

TEST_CASE("extended inverse round trip and monotonicity") {
  for (const auto& fn : {cf_log_sq(), cf_rational_sq(2.0), cf_power(4.0, 8.0),
                         rational_no_inv(), square_no_inv()}) {
    double prev_inv = 0.0;
    for (double s : log_grid(1e-4, 1e3, 40)) {
      if (s >= fn.sup_limit) break;
      const double v = extended_inverse(fn, s);
      if (!std::isfinite(v)) continue;  // preimage beyond double range
      CHECK(std::abs(fn.eval(v) - s) <= 1e-8 * std::max(1.0, s));
      CHECK(v >= prev_inv);
      prev_inv = v;
    }
  }
}

TEST_CASE("class validation rejects misdeclared tags") {
  ComparisonFn bad;
  bad.eval = [](double s) { return 1.0 / (1.0 + s); };  // decreasing
  bad.tag = FnClass::K;
  bad.name = "decreasing";
  CHECK_THROWS_AS(validate_class(bad), ClassError);

  ComparisonFn offset;
  offset.eval = [](double s) { return s + 1.0; };  // eval(0) != 0
  offset.tag = FnClass::Kinf;
  offset.name = "offset";
  CHECK_THROWS_AS(validate_class(offset), ClassError);

  ComparisonFn bounded_kinf = cf_rational_sq(1.0);
  bounded_kinf.tag = FnClass::Kinf;  // sup is finite
  CHECK_THROWS_AS(validate_class(bounded_kinf), ClassError);

  CHECK_NOTHROW(validate_class(cf_zero()));
  CHECK_NOTHROW(validate_class(cf_poly2_4(0.9, 83.0)));
}

TEST_CASE("parsing named comparison forms") {
  CHECK(parse_comparison_fn("linear 2").eval(3.0) == doctest::Approx(6.0));
  CHECK(parse_comparison_fn("power 4 8").eval(2.0) == doctest::Approx(128.0));
  CHECK(parse_comparison_fn("rational_sq 2").eval(1.0) == doctest::Approx(1.0));
  CHECK(parse_comparison_fn("log_sq").eval(1.0) == doctest::Approx(std::log(2.0)));
  CHECK(parse_comparison_fn("poly2_4 0.9 2").eval(1.0) == doctest::Approx(2.9));
  CHECK(parse_comparison_fn("zero").eval(7.0) == 0.0);
  CHECK_THROWS_AS(parse_comparison_fn("frobnicate 1"), ClassError);
  CHECK_THROWS_AS(parse_comparison_fn("linear"), ClassError);
}

TEST_CASE("small gain holds for the nominal interconnection gains") {
  const double b = 40.0 * pi * pi;
  const auto chain = make_cycle_chain(example1_gains1(),
                                      example1_gains2(0.05, b, 1.0), 2.5);
  const auto rep = check_small_gain(chain, log_grid(1e-4, 1e4, 64));
  CHECK(rep.holds);
  CHECK(rep.worst_ratio <= 1.0);
}

TEST_CASE("small gain fails on the boundary of the closed-form region") {
  const double b = 6.0 * pi * pi;  // makes the quartic coefficient too weak
  for (double c : {1.5, 2.5, 10.0}) {
    const auto chain = make_cycle_chain(example1_gains1(),
                                        example1_gains2(0.05, b, 1.0), c);
    const auto rep = check_small_gain(chain, log_grid(1e-4, 1e4, 64));
    CHECK_FALSE(rep.holds);
  }
}

TEST_CASE("small gain with identity-dominated linear chain") {
  SubsystemGains g;
  g.psi1 = g.psi2 = cf_identity();
  g.alpha = cf_identity();
  g.sigma = cf_linear(0.25);
  g.kappa = cf_zero();
  const auto chain = make_cycle_chain(g, g, 2.0);
  const auto rep = check_small_gain(chain, log_grid(1e-4, 1e4, 64));
  CHECK(rep.holds);
  CHECK(rep.worst_ratio == doctest::Approx(0.25));
}

TEST_CASE("small gain argument checks") {
  SubsystemGains g;
  g.psi1 = g.psi2 = cf_identity();
  g.alpha = cf_identity();
  g.sigma = cf_linear(0.25);
  g.kappa = cf_zero();
  CHECK_THROWS_AS(make_cycle_chain(g, g, 1.0), ClassError);
  const auto chain = make_cycle_chain(g, g, 2.0);
  CHECK_THROWS_AS(check_small_gain(chain, {}), std::invalid_argument);
  CHECK_THROWS_AS(check_small_gain(chain, {2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("chain saturation propagates to a violation") {
  // alpha with small sup saturates its extended inverse to +inf.
  SubsystemGains g;
  g.psi1 = g.psi2 = cf_identity();
  g.alpha = rational_no_inv();
  g.sigma = cf_linear(5.0);
  g.kappa = cf_zero();
  const auto chain = make_cycle_chain(g, g, 2.0);
  const auto rep = check_small_gain(chain, log_grid(1.0, 10.0, 8));
  CHECK_FALSE(rep.holds);
  CHECK(std::isinf(rep.worst_ratio));
}

namespace {
double psi_lhs(double psi) { return std::pow(psi, -psi / (psi + 1.0)); }
}

TEST_CASE("weight exponent selection") {
  CHECK(select_psi(2.5) == 0.0);
  for (double c : {2.0, 1.5, 1.1}) {
    const double psi = select_psi(c);
    CHECK(psi > 0.0);
    CHECK(psi_lhs(psi) < c / (psi + 1.0));
    CHECK(c / (psi + 1.0) <= 1.0);
  }
  // c = 2: psi = 1 gives 1 < 1, infeasible, so the answer exceeds 1.
  CHECK(select_psi(2.0) > 1.0);
  CHECK_THROWS_AS(select_psi(1.0), std::invalid_argument);
}

TEST_CASE("composite weights for the worked example, psi = 0") {
  const double omega = 1.0;
  const auto w = build_lambda(example1_gains1(),
                              example1_gains2(0.05, 40.0 * pi * pi, omega), 0.0);
  for (double s : log_grid(1e-3, 10.0, 24)) {
    const double want1 = (pi / omega) * (1.0 - std::exp(-s));
    CHECK(w.lambda1.eval(s) == doctest::Approx(want1).epsilon(1e-6));
    CHECK(w.lambda2.eval(s) == doctest::Approx(8.0 * s * s).epsilon(1e-6));
  }
}

TEST_CASE("composite weights degenerate to identity") {
  SubsystemGains g;
  g.psi1 = g.psi2 = cf_identity();
  g.alpha = cf_identity();
  g.sigma = cf_identity();
  g.kappa = cf_zero();
  const auto w = build_lambda(g, g, 0.0);
  CHECK(w.lambda1.eval(3.0) == doctest::Approx(3.0));
}

TEST_CASE("composite Lyapunov value, closed forms") {
  const auto w = build_lambda(example1_gains1(),
                              example1_gains2(0.05, 40.0 * pi * pi, 1.0), 0.0);
  const double want = pi * (1.0 + std::exp(-1.0) - 1.0) + 8.0 / 3.0;
  CHECK(composite_V(w, 1.0, 1.0) == doctest::Approx(want).epsilon(1e-7));
  CHECK(composite_V(w, 0.0, 0.0) == 0.0);

  SubsystemGains id;
  id.psi1 = id.psi2 = cf_identity();
  id.alpha = cf_identity();
  id.sigma = cf_identity();
  id.kappa = cf_zero();
  const auto wid = build_lambda(id, id, 0.0);
  CHECK(composite_V(wid, 2.0, 3.0) == doctest::Approx(6.5).epsilon(1e-8));
}

TEST_CASE("composite Lyapunov value increases in each argument") {
  const auto w = build_lambda(example1_gains1(),
                              example1_gains2(0.05, 40.0 * pi * pi, 1.0), 0.0);
  double prev = composite_V(w, 0.1, 0.1);
  for (double v = 0.2; v <= 2.0; v += 0.1) {
    const double up1 = composite_V(w, v, 0.1);
    const double up2 = composite_V(w, 0.1, v);
    CHECK(up1 > prev);
    CHECK(up2 > composite_V(w, 0.1, v - 0.1));
    prev = composite_V(w, v, 0.1);
  }
}

TEST_CASE("existence condition on alpha and sigma limits") {
  // bounded alpha1 but kappa1 = 0: holds
  CHECK(check_alpsig(example1_gains1(),
                     example1_gains2(0.05, 40.0 * pi * pi, 1.0)));

  SubsystemGains g1 = example1_gains1();
  g1.alpha = cf_identity();  // unbounded alpha, first disjunct
  CHECK(check_alpsig(g1, example1_gains2(0.05, 40.0 * pi * pi, 1.0)));

  // bounded alpha1, unbounded sigma2, kappa1 = identity: fails
  SubsystemGains bad1 = example1_gains1();
  bad1.kappa = cf_identity();
  SubsystemGains bad2 = example1_gains2(0.05, 40.0 * pi * pi, 1.0);
  bad2.sigma = cf_identity();
  CHECK_FALSE(check_alpsig(bad1, bad2));
}

TEST_CASE("adaptive quadrature sanity") {
  CHECK(adaptive_simpson([](double s) { return s * s; }, 0.0, 3.0) ==
        doctest::Approx(9.0).epsilon(1e-8));
  CHECK(adaptive_simpson([](double s) { return std::sin(s); }, 0.0, pi) ==
        doctest::Approx(2.0).epsilon(1e-8));
  CHECK(adaptive_simpson([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}
