#ifndef ISSCERT_ORACLES_HPP
#define ISSCERT_ORACLES_HPP

#include <functional>

#include "isscert/comparison.hpp"
#include "isscert/field.hpp"

namespace isscert {
namespace oracles {

// Each oracle returns rhs - lhs of its inequality (lhs - rhs for Jensen,
// where the integral side dominates); nonnegative slack means it holds.

// ab <= (w/p) a^p + w^{-1/(p-1)} ((p-1)/p) b^{p/(p-1)}
double young(double a, double b, double omega, double p);

// ab <= w a g(a) + b g^{-1}(b/w)
double kinf_ineq(double a, double b, const ComparisonFn& g, double omega);

// int f(x) dl >= L f((1/L) int x dl); returns lhs - rhs.
double jensen(const std::function<double(double)>& fconv, const GridFunction& x);

// (4 L^2 / pi^2) int (x')^2 >= int x^2  (one-sided zero boundary)
double poincare(const GridFunction& x);

// (L^2 / pi^2) int (x')^2 >= int x^2   (both ends pinned)
double friedrichs(const GridFunction& x);

// ||f||_Linf^2 <= |f(0)|^2 + 2 ||f||_L2 ||f'||_L2
double agmon(const GridFunction& x);

}  // namespace oracles
}  // namespace isscert

#endif
