#ifndef ISSCERT_CERTIFY_HPP
#define ISSCERT_CERTIFY_HPP

#include <functional>
#include <vector>

#include "isscert/comparison.hpp"
#include "isscert/field.hpp"
#include "isscert/pde.hpp"

namespace isscert {

/// Lyapunov functional forms used by the sufficient conditions:
///   PowerSobolev(q):  ||x||^{2q} in the W^{1,2q}_0 seminorm
///   LogLp(q):         ln(1 + ||x||^{2q}_{L_{2q}})
///   LogSobolev(q):    ln(1 + ||x||^{2q} in the W^{1,2q}_0 seminorm)
struct LyapunovFunctional {
  enum class Form { PowerSobolev, LogLp, LogSobolev };
  Form form = Form::PowerSobolev;
  int q = 1;
  double L = 0.0;

  static LyapunovFunctional power_sobolev(int q, double L) { return {Form::PowerSobolev, q, L}; }
  static LyapunovFunctional log_lp(int q, double L) { return {Form::LogLp, q, L}; }
  static LyapunovFunctional log_sobolev(int q, double L) { return {Form::LogSobolev, q, L}; }

  // The sandwich bound psi(||x||) that holds with equality by construction.
  ComparisonFn sandwich() const;
  // The norm the sandwich is stated in.
  NormSpec state_norm() const;
};

double eval_V(const LyapunovFunctional& V, const GridFunction& x);

struct DissipationCertificate {
  LyapunovFunctional V;
  SubsystemGains gains;  // psi1, psi2, alpha, sigma, kappa
  NormSpec state_norm, input_norm;

  void validate() const;
};

// Forward difference (V(x_{k+1}) - V(x_k)) / dt, the numerical surrogate of
// the Dini derivative; sub selects the subsystem inside the trajectory.
double lie_derivative(const LyapunovFunctional& V, const Trajectory& traj,
                      size_t k, size_t sub = 0);

struct Violation {
  double t;
  double lhs, rhs;
};

struct DissipationReport {
  std::vector<Violation> violations;
  double worst_gap = 0.0;  // max over time of lhs - rhs (may be negative)
  double worst_time = 0.0;
  bool ok() const { return violations.empty(); }
};

// Default discretization allowance C1*dt + C2*h^2, C1 = C2 = 10.
double default_tolerance(double dt, double h);

// Checks vdot_i <= -alpha(||x||) + sigma(||input||) + kappa(||u_ext||) along
// the trajectory; inputs[k] pairs with states[k]. Empty inputs means zero
// input; u_ext likewise.
DissipationReport check_dissipation(const DissipationCertificate& cert,
                                    const Trajectory& traj,
                                    const std::vector<GridFunction>& inputs,
                                    double tol, size_t sub = 0);

// Same forward-difference check against an arbitrary right-hand side
// rhs(x_k, u_k); used for the theorem-conclusion inequalities.
DissipationReport check_decrease(
    const LyapunovFunctional& V, const Trajectory& traj,
    const std::vector<GridFunction>& inputs,
    const std::function<double(const GridFunction& x, const GridFunction* u)>& rhs,
    double tol, size_t sub = 0);

// hat_alpha(s) = (pi^2 / (q^2 L^2)) (c - eps) s + L * eta(s / L)
double hat_alpha(const std::function<double(double)>& eta, double c_diff,
                 double epsilon, int q, double L, double s);

// True when hat_alpha stays nonnegative over the standard log grid.
bool hat_alpha_nonneg(const std::function<double(double)>& eta, double c_diff,
                      double epsilon, int q, double L);

// Integral hypothesis on the reaction term:
//   int (x')^{2q-2} x'' f(x, x') dl >= int eta((x')^{2q}) dl
// checked on each sample with an h^2 allowance.
bool check_assumption_f(const SystemSpec& spec,
                        const std::function<double(double)>& eta, int q,
                        const std::vector<GridFunction>& samples);

// Pointwise scalar-law hypothesis: 2q y^{2q-1} f(y,u) <= -alpha(y^{2q}) + y^{2q} sigma(|u|).
bool check_scalar_condition(int q,
                            const std::function<double(double, double)>& f_scalar,
                            const ComparisonFn& alpha, const ComparisonFn& sigma,
                            const std::vector<double>& y_grid,
                            const std::vector<double>& u_grid);

// Functional identity L s g(s) = hat_alpha(L s^{2q/(2q-1)}) on the grid,
// within 1e-8 relative.
bool check_g_condition(const ComparisonFn& g,
                       const std::function<double(double)>& hat_alpha_fn,
                       int q, double L, const std::vector<double>& s_grid);

enum class StabilityGrade { iISS, ISS };

// ISS when alpha is unbounded or its sup dominates sigma's.
StabilityGrade check_iss_gate(const ComparisonFn& alpha, const ComparisonFn& sigma);

}  // namespace isscert

#endif
