#include "isscert/certify.hpp"

#include <cmath>

namespace isscert {

ComparisonFn LyapunovFunctional::sandwich() const {
  const int p = 2 * q;
  switch (form) {
    case Form::PowerSobolev:
      return cf_power(p);
    case Form::LogLp:
    case Form::LogSobolev: {
      ComparisonFn f;
      f.name = "log1p_pow";
      f.tag = FnClass::Kinf;
      f.sup_limit = kInf;
      f.eval = [p](double s) { return std::log1p(std::pow(s, p)); };
      return f;
    }
  }
  throw std::logic_error("sandwich: unreachable");
}

NormSpec LyapunovFunctional::state_norm() const {
  switch (form) {
    case Form::PowerSobolev:
    case Form::LogSobolev:
      return NormSpec::sobolev(q);
    case Form::LogLp:
      return NormSpec::lp(2.0 * q);
  }
  throw std::logic_error("state_norm: unreachable");
}

double eval_V(const LyapunovFunctional& V, const GridFunction& x) {
  if (std::abs(x.length() - V.L) > 1e-12 * std::max(1.0, V.L))
    throw std::invalid_argument("eval_V: domain length mismatch");
  const double p = 2.0 * V.q;
  switch (V.form) {
    case LyapunovFunctional::Form::PowerSobolev:
      return std::pow(norm(x, NormSpec::sobolev(V.q)), p);
    case LyapunovFunctional::Form::LogLp:
      return std::log1p(std::pow(norm(x, NormSpec::lp(p)), p));
    case LyapunovFunctional::Form::LogSobolev:
      return std::log1p(std::pow(norm(x, NormSpec::sobolev(V.q)), p));
  }
  throw std::logic_error("eval_V: unreachable");
}

void DissipationCertificate::validate() const {
  if (gains.psi1.tag != FnClass::Kinf || gains.psi2.tag != FnClass::Kinf)
    throw ClassError("certificate: psi1, psi2 must be Kinf");
  if (gains.alpha.tag == FnClass::Zero)
    throw ClassError("certificate: alpha must be positive definite");
  validate_class(gains.alpha);
  validate_class(gains.sigma);
  validate_class(gains.kappa);
  for (double s : log_grid()) {
    if (gains.psi1.eval(s) > gains.psi2.eval(s) * (1.0 + 1e-9))
      throw ClassError("certificate: psi1 must not exceed psi2");
  }
}

double lie_derivative(const LyapunovFunctional& V, const Trajectory& traj,
                      size_t k, size_t sub) {
  if (k + 1 >= traj.size())
    throw std::invalid_argument("lie_derivative: index past the last interval");
  const double v0 = eval_V(V, traj.states[k][sub]);
  const double v1 = eval_V(V, traj.states[k + 1][sub]);
  return (v1 - v0) / traj.dt;
}

double default_tolerance(double dt, double h) {
  return 10.0 * dt + 10.0 * h * h;
}

DissipationReport check_decrease(
    const LyapunovFunctional& V, const Trajectory& traj,
    const std::vector<GridFunction>& inputs,
    const std::function<double(const GridFunction& x, const GridFunction* u)>& rhs,
    double tol, size_t sub) {
  if (!inputs.empty() && inputs.size() < traj.size() - 1)
    throw std::invalid_argument("check_decrease: inputs shorter than trajectory");
  DissipationReport rep;
  rep.worst_gap = -kInf;
  for (size_t k = 0; k + 1 < traj.size(); ++k) {
    const double lhs = lie_derivative(V, traj, k, sub);
    const GridFunction* u = inputs.empty() ? nullptr : &inputs[k];
    const double r = rhs(traj.states[k][sub], u);
    const double gap = lhs - r;
    if (gap > rep.worst_gap) {
      rep.worst_gap = gap;
      rep.worst_time = traj.times[k];
    }
    if (lhs > r + tol) rep.violations.push_back({traj.times[k], lhs, r});
  }
  return rep;
}

DissipationReport check_dissipation(const DissipationCertificate& cert,
                                    const Trajectory& traj,
                                    const std::vector<GridFunction>& inputs,
                                    double tol, size_t sub) {
  cert.validate();
  auto rhs = [&cert](const GridFunction& x, const GridFunction* u) {
    double r = -cert.gains.alpha.eval(norm(x, cert.state_norm));
    if (u) r += cert.gains.sigma.eval(norm(*u, cert.input_norm));
    return r;
  };
  return check_decrease(cert.V, traj, inputs, rhs, tol, sub);
}

double hat_alpha(const std::function<double(double)>& eta, double c_diff,
                 double epsilon, int q, double L, double s) {
  if (s < 0.0) throw std::invalid_argument("hat_alpha: s must be nonnegative");
  if (epsilon < 0.0 || epsilon > c_diff)
    throw std::invalid_argument("hat_alpha: epsilon must lie in [0, c_diff]");
  const double pi = 4.0 * std::atan(1.0);
  const double lin = pi * pi / (q * q * L * L) * (c_diff - epsilon) * s;
  return lin + (eta ? L * eta(s / L) : 0.0);
}

bool hat_alpha_nonneg(const std::function<double(double)>& eta, double c_diff,
                      double epsilon, int q, double L) {
  if (hat_alpha(eta, c_diff, epsilon, q, L, 0.0) < -1e-12) return false;
  for (double s : log_grid())
    if (hat_alpha(eta, c_diff, epsilon, q, L, s) < -1e-12) return false;
  return true;
}

bool check_assumption_f(const SystemSpec& spec,
                        const std::function<double(double)>& eta, int q,
                        const std::vector<GridFunction>& samples) {
  for (const auto& x : samples) {
    const GridFunction dx = d1(x), ddx = d2(x);
    GridFunction lhs_f(x.n(), x.length(), x.bc());
    GridFunction rhs_f(x.n(), x.length(), x.bc());
    for (int j = 0; j <= x.n(); ++j) {
      const double f = spec.reaction ? spec.reaction(x[j], dx[j], 0.0) : 0.0;
      lhs_f[j] = std::pow(dx[j], 2 * q - 2) * ddx[j] * f;
      rhs_f[j] = eta ? eta(std::pow(dx[j], 2 * q)) : 0.0;
    }
    const double tol = 10.0 * x.h() * x.h();
    if (integrate(lhs_f) < integrate(rhs_f) - tol) return false;
  }
  return true;
}

bool check_scalar_condition(int q,
                            const std::function<double(double, double)>& f_scalar,
                            const ComparisonFn& alpha, const ComparisonFn& sigma,
                            const std::vector<double>& y_grid,
                            const std::vector<double>& u_grid) {
  for (double y : y_grid) {
    const double w = std::pow(y, 2 * q);
    const double dw_coeff = 2.0 * q * std::pow(y, 2 * q - 1);
    for (double u : u_grid) {
      const double lhs = dw_coeff * f_scalar(y, u);
      const double rhs = -alpha.eval(w) + w * sigma.eval(std::abs(u));
      if (lhs > rhs + 1e-9 * std::max(1.0, std::abs(rhs))) return false;
    }
  }
  return true;
}

bool check_g_condition(const ComparisonFn& g,
                       const std::function<double(double)>& hat_alpha_fn,
                       int q, double L, const std::vector<double>& s_grid) {
  if (g.tag != FnClass::Kinf) throw ClassError("check_g_condition: g must be Kinf");
  const double exponent = 2.0 * q / (2.0 * q - 1.0);
  for (double s : s_grid) {
    const double lhs = L * s * g.eval(s);
    const double rhs = hat_alpha_fn(L * std::pow(s, exponent));
    if (std::abs(lhs - rhs) > 1e-8 * std::max({1.0, std::abs(lhs), std::abs(rhs)}))
      return false;
  }
  return true;
}

StabilityGrade check_iss_gate(const ComparisonFn& alpha, const ComparisonFn& sigma) {
  if (std::isinf(alpha.sup_limit)) return StabilityGrade::ISS;
  if (alpha.sup_limit >= sigma.sup_limit) return StabilityGrade::ISS;
  return StabilityGrade::iISS;
}

}  // namespace isscert
