#include "isscert/pde.hpp"

#include <algorithm>
#include <cmath>

namespace isscert {

void SystemSpec::validate() const {
  if (c_diff <= 0.0) throw std::invalid_argument("SystemSpec: c_diff must be positive");
  if (L <= 0.0) throw std::invalid_argument("SystemSpec: L must be positive");
  if (reaction && std::abs(reaction(0.0, 0.0, 0.0)) > 1e-14)
    throw std::invalid_argument("SystemSpec: reaction must vanish at the origin");
}

double dt_max(const SystemSpec& spec, const GridFunction& x0) {
  double amp = 0.0, damp = 0.0;
  const GridFunction dx0 = d1(x0);
  for (int j = 0; j <= x0.n(); ++j) {
    amp = std::max(amp, std::abs(x0[j]));
    damp = std::max(damp, std::abs(dx0[j]));
  }
  amp = std::max(amp, 1e-3);
  damp = std::max(damp, 1e-3);
  double lip = 1e-3;   // reaction rate: |df/dx|
  double speed = 0.0;  // advective rate: |df/dx_l| acts through the 1/h stencil
  if (spec.reaction) {
    const double eps = 1e-6;
    for (double x : {-amp, -0.5 * amp, 0.0, 0.5 * amp, amp}) {
      for (double xl : {-damp, 0.0, damp}) {
        const double fx = (spec.reaction(x + eps, xl, 0.0) -
                           spec.reaction(x - eps, xl, 0.0)) / (2.0 * eps);
        lip = std::max(lip, std::abs(fx));
        const double fxl = (spec.reaction(x, xl + eps, 0.0) -
                            spec.reaction(x, xl - eps, 0.0)) / (2.0 * eps);
        speed = std::max(speed, std::abs(fxl));
      }
    }
  }
  double bound = std::min(0.25, 1.0 / (10.0 * lip));
  if (speed > 0.0) bound = std::min(bound, x0.h() / (2.0 * speed));
  return bound;
}

namespace {

// Thomas solve of (I - mu*D2) xnew = rhs with boundary rows per the system's bc.
void implicit_diffusion(const SystemSpec& spec, double mu,
                        std::vector<double>& rhs, GridFunction& out) {
  const int n = out.n();
  std::vector<double> a(n + 1, -mu), b(n + 1, 1.0 + 2.0 * mu), c(n + 1, -mu);
  if (spec.bc.left == EndpointBc::Dirichlet) {
    b[0] = 1.0; c[0] = 0.0; rhs[0] = 0.0;
  } else {
    b[0] = 1.0 + 2.0 * mu; c[0] = -2.0 * mu;  // mirror ghost
  }
  if (spec.bc.right == EndpointBc::Dirichlet) {
    b[n] = 1.0; a[n] = 0.0; rhs[n] = 0.0;
  } else {
    b[n] = 1.0 + 2.0 * mu; a[n] = -2.0 * mu;
  }
  // forward elimination
  for (int j = 1; j <= n; ++j) {
    const double w = a[j] / b[j - 1];
    b[j] -= w * c[j - 1];
    rhs[j] -= w * rhs[j - 1];
  }
  out[n] = rhs[n] / b[n];
  for (int j = n - 1; j >= 0; --j) out[j] = (rhs[j] - c[j] * out[j + 1]) / b[j];
}

// Number of internal substeps so each solve respects the explicit-reaction
// stability advisory; the recorded cadence stays at the caller's dt.
int substeps_for(double dt, double advisory) {
  if (dt <= advisory) return 1;
  return std::min(1024, static_cast<int>(std::ceil(dt / advisory)));
}

bool finite(const GridFunction& x) {
  for (double v : x.values())
    if (!std::isfinite(v) || std::abs(v) > 1e8) return false;
  return true;
}

}  // namespace

GridFunction step(const SystemSpec& spec, const GridFunction& x,
                  const GridFunction& u, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("step: dt must be positive");
  if (x.n() != u.n()) throw std::invalid_argument("step: x and u on different grids");
  const int n = x.n();
  const double mu = spec.c_diff * dt / (x.h() * x.h());
  std::vector<double> rhs(n + 1);
  const GridFunction dx = d1(x);
  for (int j = 0; j <= n; ++j) {
    const double f = spec.reaction ? spec.reaction(x[j], dx[j], u[j]) : 0.0;
    rhs[j] = x[j] + dt * f;
  }
  GridFunction out(n, x.length(), x.bc());
  implicit_diffusion(spec, mu, rhs, out);
  out.apply_bc();
  if (!finite(out)) throw BlowupError(dt, {});
  return out;
}

Trajectory simulate(const SystemSpec& spec, const GridFunction& x0,
                    const InputSignal& u_of_t, double T, double dt,
                    int record_stride) {
  if (T <= 0.0) throw std::invalid_argument("simulate: T must be positive");
  spec.validate();
  Trajectory traj;
  traj.dt = dt * record_stride;
  GridFunction x = x0;
  x.apply_bc();
  traj.times.push_back(0.0);
  traj.states.push_back({x});
  const int steps = static_cast<int>(std::llround(T / dt));
  const int nsub = substeps_for(dt, dt_max(spec, x0));
  const double dts = dt / nsub;
  for (int k = 0; k < steps; ++k) {
    const double t = k * dt;
    const GridFunction u = u_of_t ? u_of_t(t)
                                  : GridFunction(x.n(), x.length(), x.bc());
    try {
      for (int s = 0; s < nsub; ++s) x = step(spec, x, u, dts);
    } catch (const BlowupError&) {
      throw BlowupError(t + dt, std::move(traj));
    }
    if ((k + 1) % record_stride == 0) {
      traj.times.push_back((k + 1) * dt);
      traj.states.push_back({x});
    }
  }
  return traj;
}

Trajectory simulate_interconnection(const InterconnectionSpec& ic,
                                    const GridFunction& x10,
                                    const GridFunction& x20, double T,
                                    double dt, int record_stride) {
  if (T <= 0.0) throw std::invalid_argument("simulate_interconnection: T must be positive");
  ic.sys1.validate();
  ic.sys2.validate();
  if (ic.coupling1 && std::abs(ic.coupling1(0, 0, 0, 0)) > 1e-14)
    throw std::invalid_argument("coupling1 must vanish at the origin");
  if (ic.coupling2 && std::abs(ic.coupling2(0, 0, 0, 0)) > 1e-14)
    throw std::invalid_argument("coupling2 must vanish at the origin");
  Trajectory traj;
  traj.dt = dt * record_stride;
  GridFunction x1 = x10, x2 = x20;
  x1.apply_bc();
  x2.apply_bc();
  traj.times.push_back(0.0);
  traj.states.push_back({x1, x2});
  const int n = x1.n();
  const int steps = static_cast<int>(std::llround(T / dt));
  const int nsub = substeps_for(dt, std::min(dt_max(ic.sys1, x10), dt_max(ic.sys2, x20)));
  const double dts = dt / nsub;
  for (int k = 0; k < steps; ++k) {
    try {
      for (int s = 0; s < nsub; ++s) {
        const GridFunction dx1 = d1(x1), dx2 = d1(x2);
        GridFunction u1(n, x1.length(), x1.bc()), u2(n, x2.length(), x2.bc());
        for (int j = 0; j <= n; ++j) {
          if (ic.coupling1) u1[j] = ic.coupling1(x1[j], dx1[j], x2[j], dx2[j]);
          if (ic.coupling2) u2[j] = ic.coupling2(x1[j], dx1[j], x2[j], dx2[j]);
        }
        GridFunction x1n = step(ic.sys1, x1, u1, dts);
        GridFunction x2n = step(ic.sys2, x2, u2, dts);
        x1 = std::move(x1n);
        x2 = std::move(x2n);
      }
    } catch (const BlowupError&) {
      throw BlowupError((k + 1) * dt, std::move(traj));
    }
    if ((k + 1) % record_stride == 0) {
      traj.times.push_back((k + 1) * dt);
      traj.states.push_back({x1, x2});
    }
  }
  return traj;
}

}  // namespace isscert
