#ifndef ISSCERT_COMPARISON_HPP
#define ISSCERT_COMPARISON_HPP

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace isscert {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class ClassError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class FnClass { Zero, PD, K, Kinf };

std::string to_string(FnClass c);

/// A scalar comparison function on [0,inf) with a declared class tag.
/// sup_limit is the limit at +infinity (+inf for unbounded functions).
struct ComparisonFn {
  std::function<double(double)> eval;
  FnClass tag = FnClass::PD;
  double sup_limit = kInf;
  std::string name;
  // Optional closed-form inverse on [0, sup_limit); extended_inverse uses it
  // when set and falls back to bisection otherwise.
  std::function<double(double)> inverse;

  // Extended-real evaluation: at s=+inf returns sup_limit.
  double operator()(double s) const;

  bool is_k() const { return tag == FnClass::K || tag == FnClass::Kinf; }
};

// Named closed forms used in configs and the worked examples.
ComparisonFn cf_zero();
ComparisonFn cf_identity();
ComparisonFn cf_linear(double k);
ComparisonFn cf_power(double p, double coeff = 1.0);
ComparisonFn cf_rational_sq(double coeff);           // c*s^2/(1+s^2)
ComparisonFn cf_log_sq();                            // ln(1+s^2)
ComparisonFn cf_poly2_4(double c2, double c4);       // c2*s^2 + c4*s^4

// Parses e.g. "linear 2", "power 4 8", "rational_sq 2", "log_sq",
// "poly2_4 0.9 12.6", "zero".
ComparisonFn parse_comparison_fn(const std::string& text);

// Checks the declared class tag by sampling (64 log-spaced points in
// [1e-6, 1e6]). Throws ClassError on violation.
void validate_class(const ComparisonFn& fn);

// omega^-(s) = sup { v >= 0 : s >= omega(v) }. Returns +inf for
// s >= sup_limit; otherwise inverts by bracketing and bisection.
double extended_inverse(const ComparisonFn& omega, double s);

/// The (psi1, psi2, alpha, sigma, kappa) function bundle of one subsystem's
/// dissipation estimate.
struct SubsystemGains {
  ComparisonFn psi1, psi2, alpha, sigma, kappa;
};

/// Composition chain of the cyclic small-gain condition. Stages are applied
/// left to right; the scale constant c_sg multiplies each sigma stage.
struct GainChain {
  struct Stage {
    enum class Kind { Apply, ApplyInverse, ApplyExtendedInverse };
    Kind kind;
    ComparisonFn fn;
    double scale = 1.0;  // multiplies the stage output
  };
  std::vector<Stage> stages;
  double c_sg = 0.0;

  double eval(double s) const;
};

// Builds the two-subsystem cycle
//   psi11^-1 o psi12 o alpha1^- o c*sigma1 o psi21^-1 o psi22 o alpha2^- o c*sigma2
// Throws ClassError unless c_sg > 1 and all stages are well-classed.
GainChain make_cycle_chain(const SubsystemGains& g1, const SubsystemGains& g2,
                           double c_sg);

struct SmallGainReport {
  bool holds = false;
  double worst_ratio = 0.0;
  double worst_s = 0.0;
};

SmallGainReport check_small_gain(const GainChain& chain,
                                 const std::vector<double>& s_grid);

// Exponent selection for the composite Lyapunov weights: 0 for c_sg > 2,
// otherwise the smallest psi with psi^(-psi/(psi+1)) < c_sg/(psi+1) <= 1.
double select_psi(double c_sg);

struct LambdaWeights {
  ComparisonFn lambda1, lambda2;
  double psi_exponent = 0.0;
};

// lambda_i(s) = [alpha_i(psi_i2^-1(s))]^psi [sigma_{3-i}(psi_i1^-1(s))]^(psi+1)
LambdaWeights build_lambda(const SubsystemGains& g1, const SubsystemGains& g2,
                           double psi);

// Integral of the weighted sum: int_0^v1 lambda1 + int_0^v2 lambda2,
// adaptive Simpson to relative tolerance 1e-8.
double composite_V(const LambdaWeights& weights, double v1, double v2);

// For i=1,2: lim alpha_i = inf, or sigma_{3-i} bounded with
// sigma_{3-i}(inf)*kappa_i(1) finite.
bool check_alpsig(const SubsystemGains& g1, const SubsystemGains& g2);

// Adaptive Simpson quadrature of f on [a,b], relative tolerance rel_tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double rel_tol = 1e-8);

// 64 log-spaced points in [lo, hi]; the default sampling grid for class
// validation and small-gain checks.
std::vector<double> log_grid(double lo = 1e-6, double hi = 1e6, int n = 64);

}  // namespace isscert

#endif
