#ifndef ISSCERT_PDE_HPP
#define ISSCERT_PDE_HPP

#include <functional>
#include <vector>

#include "isscert/field.hpp"

namespace isscert {

/// One parabolic subsystem dx/dt = c_diff * x_ll + reaction(x, x_l, u).
struct SystemSpec {
  double c_diff = 1.0;
  std::function<double(double x, double x_l, double u)> reaction;
  BoundaryCondition bc = BoundaryCondition::dirichlet();
  NormSpec state_norm = NormSpec::l2();
  NormSpec input_norm = NormSpec::l2();
  double L = 0.0;

  void validate() const;
};

/// Two subsystems with pointwise coupling terms; coupling_i is the input
/// entering subsystem i, evaluated at beginning-of-step states.
struct InterconnectionSpec {
  SystemSpec sys1, sys2;
  std::function<double(double x1, double x1_l, double x2, double x2_l)> coupling1;
  std::function<double(double x1, double x1_l, double x2, double x2_l)> coupling2;
};

struct Trajectory {
  std::vector<double> times;
  // states[k] holds one GridFunction per subsystem at times[k].
  std::vector<std::vector<GridFunction>> states;
  double dt = 0.0;

  size_t size() const { return times.size(); }
};

/// Thrown when a state leaves the finite range during integration; carries
/// the failure time and whatever was recorded so far.
class BlowupError : public std::runtime_error {
public:
  BlowupError(double t, Trajectory partial)
      : std::runtime_error("solution blew up at t=" + std::to_string(t)),
        time(t), partial_trajectory(std::move(partial)) {}
  double time;
  Trajectory partial_trajectory;
};

// Advisory explicit-stability bound: min(0.25, 1/(10*Lip)) with the reaction
// Lipschitz constant probed on the ball spanned by x0.
double dt_max(const SystemSpec& spec, const GridFunction& x0);

// One IMEX step: backward Euler on c_diff * d2 (tridiagonal solve), the
// reaction and input explicit; boundary conditions reimposed afterwards.
GridFunction step(const SystemSpec& spec, const GridFunction& x,
                  const GridFunction& u, double dt);

using InputSignal = std::function<GridFunction(double t)>;

Trajectory simulate(const SystemSpec& spec, const GridFunction& x0,
                    const InputSignal& u_of_t, double T, double dt,
                    int record_stride = 1);

Trajectory simulate_interconnection(const InterconnectionSpec& ic,
                                    const GridFunction& x10,
                                    const GridFunction& x20, double T,
                                    double dt, int record_stride = 1);

}  // namespace isscert

#endif
