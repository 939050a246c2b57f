#include "isscert/oracles.hpp"

#include <cmath>
#include <numbers>

namespace isscert {
namespace oracles {

double young(double a, double b, double omega, double p) {
  if (a < 0.0 || b < 0.0) throw std::invalid_argument("young: a, b must be nonnegative");
  if (omega <= 0.0 || p <= 0.0 || p == 1.0)
    throw std::invalid_argument("young: need omega > 0, p > 0, p != 1");
  const double rhs = omega / p * std::pow(a, p) +
                     std::pow(omega, -1.0 / (p - 1.0)) * (p - 1.0) / p *
                         std::pow(b, p / (p - 1.0));
  return rhs - a * b;
}

double kinf_ineq(double a, double b, const ComparisonFn& g, double omega) {
  if (a < 0.0 || b < 0.0) throw std::invalid_argument("kinf_ineq: a, b must be nonnegative");
  if (omega <= 0.0) throw std::invalid_argument("kinf_ineq: omega must be positive");
  if (g.tag != FnClass::Kinf) throw ClassError("kinf_ineq: g must be Kinf");
  const double rhs = omega * a * g.eval(a) +
                     (b == 0.0 ? 0.0 : b * extended_inverse(g, b / omega));
  return rhs - a * b;
}

double jensen(const std::function<double(double)>& fconv, const GridFunction& x) {
  const double L = x.length();
  // Convexity is the caller's obligation; spot-check a few midpoints over the
  // sampled value range so gross mistakes fail loudly.
  double lo = x[0], hi = x[0];
  for (int j = 0; j <= x.n(); ++j) {
    lo = std::min(lo, x[j]);
    hi = std::max(hi, x[j]);
  }
  for (double t : {0.25, 0.5, 0.75}) {
    const double a = lo + t * 0.5 * (hi - lo);
    const double b = hi - (1.0 - t) * 0.25 * (hi - lo);
    const double mid = 0.5 * (a + b);
    if (fconv(mid) > 0.5 * (fconv(a) + fconv(b)) + 1e-9 * (1.0 + std::abs(fconv(mid))))
      throw std::invalid_argument("jensen: f fails a midpoint convexity check");
  }
  GridFunction fx(x.n(), L, x.bc());
  for (int j = 0; j <= x.n(); ++j) fx[j] = fconv(x[j]);
  const double mean = integrate(x) / L;
  return integrate(fx) - L * fconv(mean);
}

namespace {

double gradient_energy(const GridFunction& x) {
  GridFunction dx = d1(x);
  for (int j = 0; j <= x.n(); ++j) dx[j] *= dx[j];
  return integrate(dx);
}

double mass_energy(const GridFunction& x) {
  GridFunction x2(x.n(), x.length(), x.bc());
  for (int j = 0; j <= x.n(); ++j) x2[j] = x[j] * x[j];
  return integrate(x2);
}

}  // namespace

double poincare(const GridFunction& x) {
  const double L = x.length();
  const double c = 4.0 * L * L / (std::numbers::pi * std::numbers::pi);
  return c * gradient_energy(x) - mass_energy(x);
}

double friedrichs(const GridFunction& x) {
  if (x.bc() != BoundaryCondition::dirichlet())
    throw std::invalid_argument("friedrichs: requires both ends pinned");
  const double L = x.length();
  const double c = L * L / (std::numbers::pi * std::numbers::pi);
  return c * gradient_energy(x) - mass_energy(x);
}

double agmon(const GridFunction& x) {
  const double linf = norm(x, NormSpec::linf());
  const double rhs = x[0] * x[0] +
                     2.0 * std::sqrt(mass_energy(x)) * std::sqrt(gradient_energy(x));
  return rhs - linf * linf;
}

}  // namespace oracles
}  // namespace isscert
