#include "isscert/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isscert {

std::string to_string(FnClass c) {
  switch (c) {
    case FnClass::Zero: return "Zero";
    case FnClass::PD:   return "PD";
    case FnClass::K:    return "K";
    case FnClass::Kinf: return "Kinf";
  }
  return "?";
}

double ComparisonFn::operator()(double s) const {
  if (std::isinf(s)) return sup_limit;
  return eval(s);
}

ComparisonFn cf_zero() {
  return {[](double) { return 0.0; }, FnClass::Zero, 0.0, "zero"};
}

ComparisonFn cf_identity() {
  return {[](double s) { return s; }, FnClass::Kinf, kInf, "identity",
          [](double s) { return s; }};
}

ComparisonFn cf_linear(double k) {
  if (k <= 0.0) throw ClassError("linear: slope must be positive");
  std::ostringstream nm;
  nm << "linear " << k;
  return {[k](double s) { return k * s; }, FnClass::Kinf, kInf, nm.str(),
          [k](double s) { return s / k; }};
}

ComparisonFn cf_power(double p, double coeff) {
  if (p <= 0.0 || coeff <= 0.0) throw ClassError("power: p, coeff must be positive");
  std::ostringstream nm;
  nm << "power " << p << " " << coeff;
  return {[p, coeff](double s) { return coeff * std::pow(s, p); },
          FnClass::Kinf, kInf, nm.str(),
          [p, coeff](double s) { return std::pow(s / coeff, 1.0 / p); }};
}

ComparisonFn cf_rational_sq(double coeff) {
  if (coeff <= 0.0) throw ClassError("rational_sq: coeff must be positive");
  std::ostringstream nm;
  nm << "rational_sq " << coeff;
  return {[coeff](double s) { return coeff * s * s / (1.0 + s * s); },
          FnClass::K, coeff, nm.str(),
          [coeff](double s) { return std::sqrt(s / (coeff - s)); }};
}

ComparisonFn cf_log_sq() {
  return {[](double s) { return std::log1p(s * s); }, FnClass::Kinf, kInf,
          "log_sq", [](double s) { return std::sqrt(std::expm1(s)); }};
}

ComparisonFn cf_poly2_4(double c2, double c4) {
  if (c2 < 0.0 || c4 < 0.0 || (c2 == 0.0 && c4 == 0.0))
    throw ClassError("poly2_4: coefficients must be nonnegative, not both zero");
  std::ostringstream nm;
  nm << "poly2_4 " << c2 << " " << c4;
  // c2 t + c4 t^2 = y with t = s^2, positive root
  std::function<double(double)> inv;
  if (c4 == 0.0) {
    inv = [c2](double y) { return std::sqrt(y / c2); };
  } else {
    inv = [c2, c4](double y) {
      const double t = (-c2 + std::sqrt(c2 * c2 + 4.0 * c4 * y)) / (2.0 * c4);
      return std::sqrt(std::max(0.0, t));
    };
  }
  return {[c2, c4](double s) { return c2 * s * s + c4 * s * s * s * s; },
          FnClass::Kinf, kInf, nm.str(), std::move(inv)};
}

ComparisonFn parse_comparison_fn(const std::string& text) {
  std::istringstream in(text);
  std::string form;
  in >> form;
  auto arg = [&in, &form]() {
    double v;
    if (!(in >> v)) throw ClassError("comparison form '" + form + "': missing parameter");
    return v;
  };
  if (form == "zero") return cf_zero();
  if (form == "identity") return cf_identity();
  if (form == "linear") return cf_linear(arg());
  if (form == "power") { double p = arg(); return cf_power(p, arg()); }
  if (form == "rational_sq") return cf_rational_sq(arg());
  if (form == "log_sq") return cf_log_sq();
  if (form == "poly2_4") { double c2 = arg(); return cf_poly2_4(c2, arg()); }
  throw ClassError("unknown comparison form '" + form + "'");
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(step * i);
  return g;
}

void validate_class(const ComparisonFn& fn) {
  const double tol = 1e-12;
  const double at0 = fn.eval(0.0);
  if (std::abs(at0) > tol && fn.tag != FnClass::Zero)
    throw ClassError(fn.name + ": eval(0) != 0");
  const auto grid = log_grid();
  double prev = at0;
  for (double s : grid) {
    const double v = fn.eval(s);
    if (!std::isfinite(v)) throw ClassError(fn.name + ": non-finite value");
    switch (fn.tag) {
      case FnClass::Zero:
        if (std::abs(v) > tol) throw ClassError(fn.name + ": Zero tag but nonzero value");
        break;
      case FnClass::PD:
        if (v <= 0.0) throw ClassError(fn.name + ": PD tag but eval <= 0 at s > 0");
        break;
      case FnClass::K:
      case FnClass::Kinf:
        if (v <= prev - tol * std::max(1.0, std::abs(prev)) || v <= 0.0)
          throw ClassError(fn.name + ": K tag but not strictly increasing");
        if (std::isfinite(fn.sup_limit) && v > fn.sup_limit * (1.0 + 1e-9))
          throw ClassError(fn.name + ": value exceeds declared sup_limit");
        break;
    }
    prev = v;
  }
  if (fn.tag == FnClass::Kinf && std::isfinite(fn.sup_limit))
    throw ClassError(fn.name + ": Kinf tag requires sup_limit = +inf");
}

double extended_inverse(const ComparisonFn& omega, double s) {
  if (!omega.is_k()) throw ClassError("extended_inverse: function is not class K");
  if (s < 0.0) throw std::invalid_argument("extended_inverse: negative argument");
  if (s >= omega.sup_limit) return kInf;
  if (s == 0.0) return 0.0;
  if (omega.inverse) return omega.inverse(s);
  double lo = 0.0, hi = 1.0;
  int grow = 0;
  while (omega.eval(hi) < s) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 2000) throw NumericError("extended_inverse: bracket growth failed");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (omega.eval(mid) < s) lo = mid; else hi = mid;
    if (hi - lo <= 1e-10 * std::max(1.0, std::abs(hi))) return 0.5 * (lo + hi);
  }
  throw NumericError("extended_inverse: bisection did not converge");
}

double GainChain::eval(double s) const {
  double v = s;
  for (const auto& st : stages) {
    switch (st.kind) {
      case Stage::Kind::Apply:
        v = st.scale * st.fn(v);
        break;
      case Stage::Kind::ApplyInverse:
      case Stage::Kind::ApplyExtendedInverse:
        v = std::isinf(v) ? kInf : st.scale * extended_inverse(st.fn, v);
        break;
    }
  }
  return v;
}

GainChain make_cycle_chain(const SubsystemGains& g1, const SubsystemGains& g2,
                           double c_sg) {
  if (!(c_sg > 1.0)) throw ClassError("make_cycle_chain: c_sg must exceed 1");
  for (const auto* g : {&g1, &g2}) {
    validate_class(g->alpha);
    validate_class(g->sigma);
    if (g->psi1.tag != FnClass::Kinf || g->psi2.tag != FnClass::Kinf)
      throw ClassError("make_cycle_chain: psi maps must be Kinf");
    if (!g->alpha.is_k())
      throw ClassError("make_cycle_chain: alpha must be class K for the chain");
  }
  using K = GainChain::Stage::Kind;
  GainChain chain;
  chain.c_sg = c_sg;
  chain.stages = {
      {K::Apply, g2.sigma, c_sg},
      {K::ApplyExtendedInverse, g2.alpha, 1.0},
      {K::Apply, g2.psi2, 1.0},
      {K::ApplyInverse, g2.psi1, 1.0},
      {K::Apply, g1.sigma, c_sg},
      {K::ApplyExtendedInverse, g1.alpha, 1.0},
      {K::Apply, g1.psi2, 1.0},
      {K::ApplyInverse, g1.psi1, 1.0},
  };
  return chain;
}

SmallGainReport check_small_gain(const GainChain& chain,
                                 const std::vector<double>& s_grid) {
  if (s_grid.empty())
    throw std::invalid_argument("check_small_gain: empty grid");
  for (size_t i = 0; i < s_grid.size(); ++i) {
    if (s_grid[i] <= 0.0 || (i > 0 && s_grid[i] <= s_grid[i - 1]))
      throw std::invalid_argument("check_small_gain: grid must be ascending and positive");
  }
  SmallGainReport rep;
  rep.holds = true;
  for (double s : s_grid) {
    const double v = chain.eval(s);
    const double ratio = std::isinf(v) ? kInf : v / s;
    if (ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst_s = s;
    }
    if (!(v <= s * (1.0 + 1e-12))) rep.holds = false;
  }
  return rep;
}

namespace {

// Left side of eq-tauphi's strict inequality minus the right side.
double psi_gap(double psi, double c) {
  return std::pow(psi, -psi / (psi + 1.0)) - c / (psi + 1.0);
}

bool psi_feasible(double psi, double c) {
  return psi >= c - 1.0 && psi_gap(psi, c) < 0.0;
}

}  // namespace

double select_psi(double c_sg) {
  if (!(c_sg > 1.0)) throw std::invalid_argument("select_psi: c_sg must exceed 1");
  if (c_sg > 2.0) return 0.0;
  const double lo = c_sg - 1.0, hi = 1e6;
  const int n = 200;
  const double step = std::log(hi / lo) / (n - 1);
  double prev = lo;
  for (int i = 0; i < n; ++i) {
    const double psi = lo * std::exp(step * i);
    if (psi_feasible(psi, c_sg)) {
      // refine the lower boundary of feasibility between prev and psi
      double a = prev, b = psi;
      for (int it = 0; it < 100; ++it) {
        const double m = 0.5 * (a + b);
        if (psi_feasible(m, c_sg)) b = m; else a = m;
      }
      return b;
    }
    prev = psi;
  }
  throw NumericError("select_psi: no feasible exponent below scan cap");
}

LambdaWeights build_lambda(const SubsystemGains& g1, const SubsystemGains& g2,
                           double psi) {
  if (psi < 0.0) throw std::invalid_argument("build_lambda: psi must be nonnegative");
  for (const auto* g : {&g1, &g2}) {
    if (g->psi1.tag != FnClass::Kinf || g->psi2.tag != FnClass::Kinf)
      throw ClassError("build_lambda: psi maps must be Kinf");
  }
  auto make = [psi](const ComparisonFn& alpha, const ComparisonFn& psi2,
                    const ComparisonFn& sigma_other, const ComparisonFn& psi1,
                    const std::string& nm) {
    ComparisonFn lam;
    lam.name = nm;
    lam.tag = FnClass::K;
    lam.eval = [psi, alpha, psi2, sigma_other, psi1](double s) {
      const double base = sigma_other.eval(extended_inverse(psi1, s));
      const double sec = std::pow(base, psi + 1.0);
      if (psi == 0.0) return sec;
      return std::pow(alpha.eval(extended_inverse(psi2, s)), psi) * sec;
    };
    double sup = std::pow(sigma_other.sup_limit, psi + 1.0);
    if (psi > 0.0) sup *= std::pow(alpha.sup_limit, psi);
    lam.sup_limit = sup;
    if (std::isinf(lam.sup_limit)) lam.tag = FnClass::Kinf;
    return lam;
  };
  LambdaWeights w;
  w.psi_exponent = psi;
  w.lambda1 = make(g1.alpha, g1.psi2, g2.sigma, g1.psi1, "lambda1");
  w.lambda2 = make(g2.alpha, g2.psi2, g1.sigma, g2.psi1, "lambda2");
  return w;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb, double m, double fm, double whole,
                   double eps, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (depth > 60) throw NumericError("adaptive_simpson: recursion limit");
  if (std::abs(delta) <= 15.0 * eps)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * eps, depth + 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * eps, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(f, a, fa, b, fb, m, fm);
  const double eps = rel_tol * std::max(1e-14, std::abs(whole));
  return simpson_rec(f, a, fa, b, fb, m, fm, whole, eps, 0);
}

double composite_V(const LambdaWeights& weights, double v1, double v2) {
  if (v1 < 0.0 || v2 < 0.0)
    throw std::invalid_argument("composite_V: arguments must be nonnegative");
  auto l1 = [&weights](double s) { return weights.lambda1.eval(s); };
  auto l2 = [&weights](double s) { return weights.lambda2.eval(s); };
  double total = 0.0;
  if (v1 > 0.0) total += adaptive_simpson(l1, 0.0, v1);
  if (v2 > 0.0) total += adaptive_simpson(l2, 0.0, v2);
  return total;
}

bool check_alpsig(const SubsystemGains& g1, const SubsystemGains& g2) {
  auto one = [](const SubsystemGains& gi, const SubsystemGains& gother) {
    if (std::isinf(gi.alpha.sup_limit)) return true;
    const double k1 = gi.kappa.tag == FnClass::Zero ? 0.0 : gi.kappa.eval(1.0);
    if (k1 == 0.0) return true;
    return std::isfinite(gother.sigma.sup_limit);
  };
  return one(g1, g2) && one(g2, g1);
}

}  // namespace isscert
