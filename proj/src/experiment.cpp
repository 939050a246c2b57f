#include "isscert/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "isscert/oracles.hpp"

namespace isscert {

namespace {

constexpr double kPi = std::numbers::pi;

SystemSpec make_sys2(double a, double b) {
  SystemSpec sys;
  sys.c_diff = 1.0;
  sys.reaction = [a, b](double x, double xl, double u) {
    return a * x - b * x * xl * xl + u;
  };
  sys.bc = BoundaryCondition::dirichlet();
  sys.state_norm = NormSpec::h10();
  sys.L = kPi;
  return sys;
}

}  // namespace

ExampleSystems build_example(int which, double a, double b, double omega) {
  if (which != 1 && which != 2)
    throw std::invalid_argument("build_example: which must be 1 or 2");
  ExampleSystems ex;
  ex.a = a;
  ex.b = b;
  ex.omega = omega;

  SystemSpec sys1;
  sys1.c_diff = 1.0;
  sys1.bc = BoundaryCondition::dirichlet();
  sys1.L = kPi;
  if (which == 1) {
    sys1.reaction = [](double x, double, double u) { return x * u * u * u * u; };
    sys1.state_norm = NormSpec::l2();
    sys1.input_norm = NormSpec::h10();
    ex.ic.coupling1 = [](double, double, double x2, double) { return x2; };
  } else {
    sys1.reaction = [](double, double xl, double u) { return xl * u; };
    sys1.state_norm = NormSpec::h10();
    sys1.input_norm = NormSpec::h10();
    ex.ic.coupling1 = [](double, double, double x2, double) { return x2 * x2; };
  }
  ex.ic.sys1 = sys1;
  ex.ic.sys2 = make_sys2(a, b);
  ex.ic.sys2.input_norm = which == 1 ? NormSpec::l2() : NormSpec::h10();
  ex.ic.coupling2 = [](double x1, double, double, double) {
    return std::sqrt(x1 * x1 / (1.0 + x1 * x1));
  };

  const bool in_region =
      a < 1.0 && b > 0.0 && omega > 0.0 && omega <= 2.0 * (1.0 - a);
  if (!in_region) return ex;

  SubsystemGains g1;
  g1.psi1 = g1.psi2 = cf_log_sq();
  g1.alpha = cf_rational_sq(which == 1 ? 2.0 : 1.0);
  g1.sigma = cf_power(4.0, which == 1 ? 8.0 : 4.0);
  g1.kappa = cf_zero();

  SubsystemGains g2;
  g2.psi1 = g2.psi2 = cf_power(2.0);
  g2.alpha = cf_poly2_4(2.0 * (1.0 - a - omega / 2.0), 2.0 * b / (3.0 * kPi));
  g2.sigma = cf_rational_sq(kPi / omega);
  g2.kappa = cf_zero();

  ex.cert1.V = which == 1 ? LyapunovFunctional::log_lp(1, kPi)
                          : LyapunovFunctional::log_sobolev(1, kPi);
  ex.cert1.gains = g1;
  ex.cert1.state_norm = sys1.state_norm;
  ex.cert1.input_norm = sys1.input_norm;

  ex.cert2.V = LyapunovFunctional::power_sobolev(1, kPi);
  ex.cert2.gains = g2;
  ex.cert2.state_norm = NormSpec::h10();
  ex.cert2.input_norm = ex.ic.sys2.input_norm;

  ex.weights = build_lambda(g1, g2, 0.0);
  ex.has_certificates = true;
  return ex;
}

bool closed_form_small_gain(double a, double b, double omega) {
  if (!(a < 1.0) || b <= 0.0 || omega <= 0.0) return false;
  return 6.0 * kPi * kPi / b < omega && omega <= 2.0 * (1.0 - a);
}

double max_small_gain_scale(double b, double omega) {
  if (b <= 0.0 || omega <= 0.0) return 0.0;
  return std::sqrt(b * omega / (6.0 * kPi * kPi));
}

SmallGainVerdict example_small_gain(int which, double a, double b, double omega,
                                    std::optional<double> c_sg) {
  SmallGainVerdict v;
  ExampleSystems ex;
  try {
    ex = build_example(which, a, b, omega);
  } catch (const std::exception& e) {
    v.detail = e.what();
    return v;
  }
  if (!ex.has_certificates) {
    v.detail = "certificate gains unavailable outside the hypothesis region";
    return v;
  }
  double c = 0.0;
  if (c_sg) {
    c = *c_sg;
  } else {
    const double cmax = max_small_gain_scale(b, omega);
    if (cmax <= 1.0) {
      v.detail = "no scale constant above 1 passes the closed-form reduction";
      return v;
    }
    // just below the closed-form maximum (1% margin when room allows)
    c = std::max(0.99 * cmax, 0.5 * (1.0 + cmax));
  }
  if (!(c > 1.0)) {
    v.detail = "c_sg must exceed 1";
    return v;
  }
  try {
    const GainChain chain = make_cycle_chain(ex.cert1.gains, ex.cert2.gains, c);
    const auto rep = check_small_gain(chain, log_grid(1e-4, 1e4, 64));
    v.constructible = true;
    v.c_sg = c;
    v.holds = rep.holds;
    v.worst_ratio = rep.worst_ratio;
  } catch (const std::exception& e) {
    v.detail = e.what();
  }
  return v;
}

bool Report::all_passed() const {
  if (blowup) return false;
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

const CheckResult* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.check == name) return &c;
  return nullptr;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["blowup"] = blowup;
  if (blowup) j["blowup_time"] = blowup_time;
  j["norm_ratio"] = norm_ratio;
  j["grid_n"] = grid_n;
  j["steps"] = steps;
  j["dt"] = dt;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json jc;
    jc["check"] = c.check;
    jc["status"] = c.passed ? "pass" : "fail";
    jc["worst_violation"] = c.worst_violation;
    jc["time"] = c.time;
    if (!c.detail.empty()) jc["detail"] = c.detail;
    j["checks"].push_back(jc);
  }
  return j.dump(2);
}

namespace {

std::vector<std::pair<int, double>> parse_modes(const std::string& text) {
  std::vector<std::pair<int, double>> modes;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ConfigError("initial modes: expected n:amplitude pairs");
    modes.emplace_back(std::stoi(item.substr(0, colon)),
                       std::stod(item.substr(colon + 1)));
  }
  if (modes.empty()) throw ConfigError("initial modes: empty list");
  return modes;
}

std::vector<std::string> parse_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

GridFunction sine_modes(int n, double L, BoundaryCondition bc,
                        const std::vector<std::pair<int, double>>& modes) {
  return GridFunction(n, L, bc, [&modes, L](double l) {
    double v = 0.0;
    for (const auto& [k, amp] : modes) v += amp * std::sin(k * kPi * l / L);
    return v;
  });
}

}  // namespace

GridFunction random_bandlimited(int n, double L, BoundaryCondition bc, int cutoff,
                                double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<double> c(cutoff + 1);
  for (int k = 0; k <= cutoff; ++k) c[k] = amplitude * coeff(rng) / (k + 1.0);
  const bool dl = bc.left == EndpointBc::Dirichlet;
  const bool dr = bc.right == EndpointBc::Dirichlet;
  return GridFunction(n, L, bc, [&, dl, dr](double l) {
    double v = 0.0;
    for (int k = 1; k <= cutoff; ++k) {
      double phase;
      if (dl && dr) phase = std::sin(k * kPi * l / L);
      else if (dl) phase = std::sin((k - 0.5) * kPi * l / L);
      else if (dr) phase = std::cos((k - 0.5) * kPi * l / L);
      else phase = std::cos(k * kPi * l / L);
      v += c[k] * phase;
    }
    if (!dl && !dr) v += c[0];
    return v;
  });
}

ExperimentConfig ExperimentConfig::parse(const Config& cfg) {
  ExperimentConfig ec;
  ec.experiment = cfg.require_str("experiment");
  if (ec.experiment != "example1" && ec.experiment != "example2" &&
      ec.experiment != "custom")
    throw ConfigError("experiment must be example1, example2 or custom");
  ec.a = cfg.get_num("params.a", 0.05);
  ec.b = cfg.get_num("params.b", 40.0 * kPi * kPi);
  ec.c_sg = cfg.get_opt_num("params.c_sg");
  ec.n_grid = cfg.get_int("grid.N", 256);
  const bool is_example = ec.experiment != "custom";
  ec.L = cfg.get_num("grid.L", kPi);
  if (is_example && std::abs(ec.L - kPi) > 1e-12)
    throw ConfigError("example experiments fix L = pi");
  if (is_example) ec.L = kPi;
  if (const auto om = cfg.get_opt_num("params.omega")) {
    ec.omega = *om;
  } else {
    const double hi = 2.0 * (1.0 - ec.a);
    const double lo = ec.b > 0.0 ? 6.0 * kPi * kPi / ec.b : hi;
    ec.omega = std::min(hi, 0.5 * (lo + hi));
  }
  ec.dt = cfg.get_num("time.dt", 1e-3);
  ec.T = cfg.get_num("time.T", 20.0);
  ec.record_stride = cfg.get_int("time.record_stride", 10);
  ec.initial_family = cfg.get_str("initial.family", "sine_modes");
  ec.modes1 = parse_modes(cfg.get_str("initial.modes1", "1:1.0"));
  ec.modes2 = parse_modes(cfg.get_str("initial.modes2", "2:0.5"));
  ec.cutoff = cfg.get_int("initial.cutoff", 4);
  ec.amplitude = cfg.get_num("initial.amplitude", 0.5);
  ec.seed = static_cast<std::uint64_t>(cfg.get_num("initial.seed", 1));
  ec.checks = parse_list(cfg.get_str(
      "checks", "small_gain,dissipation_1,dissipation_2,composite_monotone,decay"));
  ec.output_dir = cfg.get_str("output_dir", "");
  ec.snapshots = cfg.get_int("output.snapshots", 0) != 0;
  ec.c_diff = cfg.get_num("custom.c_diff", 1.0);
  if (is_example) {
    if (!(ec.a < 1.0)) ec.warnings.push_back("a >= 1: outside the hypothesis region");
    if (ec.b < 0.0) ec.warnings.push_back("b < 0: outside the hypothesis region");
  }
  if (ec.dt <= 0.0 || ec.T <= 0.0 || ec.record_stride < 1)
    throw ConfigError("time.dt, time.T, time.record_stride must be positive");
  return ec;
}

void emit_plotdata(const Trajectory& traj, const ExampleSystems& ex,
                   const std::string& dir, bool snapshots) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream out(fs::path(dir) / "timeseries.csv");
  if (!out) throw std::runtime_error("emit_plotdata: cannot write in " + dir);
  out.precision(17);
  out << "t,norm_x1,norm_x2,V1,V2,V_composite\n";
  for (size_t k = 0; k < traj.size(); ++k) {
    const auto& x1 = traj.states[k][0];
    const auto& x2 = traj.states[k][1];
    const double v1 = ex.has_certificates ? eval_V(ex.cert1.V, x1) : 0.0;
    const double v2 = ex.has_certificates ? eval_V(ex.cert2.V, x2) : 0.0;
    const double vc = ex.has_certificates ? composite_V(ex.weights, v1, v2) : 0.0;
    out << traj.times[k] << "," << norm(x1, ex.ic.sys1.state_norm) << ","
        << norm(x2, ex.ic.sys2.state_norm) << "," << v1 << "," << v2 << ","
        << vc << "\n";
  }
  if (snapshots) {
    const fs::path snapdir = fs::path(dir) / "snapshots";
    fs::create_directories(snapdir);
    for (size_t k = 0; k < traj.size(); ++k) {
      std::ostringstream name;
      name.precision(17);
      name << "state_" << k << ".csv";
      std::ofstream snap(snapdir / name.str());
      snap.precision(17);
      snap << "# t=" << traj.times[k] << "\n";
      for (size_t s = 0; s < traj.states[k].size(); ++s)
        traj.states[k][s].write_csv(snap);
    }
  }
}

namespace {

bool wants(const ExperimentConfig& cfg, const std::string& name) {
  return std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end();
}

Report run_custom(const ExperimentConfig& cfg) {
  Report rep;
  rep.experiment = cfg.experiment;
  rep.grid_n = cfg.n_grid;
  rep.dt = cfg.dt;
  SystemSpec sys;
  sys.c_diff = cfg.c_diff;
  sys.bc = BoundaryCondition::dirichlet();
  sys.state_norm = NormSpec::l2();
  sys.L = cfg.L;
  GridFunction x0 = cfg.initial_family == "random_bandlimited"
                        ? random_bandlimited(cfg.n_grid, cfg.L, sys.bc, cfg.cutoff,
                                             cfg.amplitude, cfg.seed)
                        : sine_modes(cfg.n_grid, cfg.L, sys.bc, cfg.modes1);
  Trajectory traj;
  try {
    traj = simulate(sys, x0, {}, cfg.T, cfg.dt, cfg.record_stride);
  } catch (const BlowupError& e) {
    rep.blowup = true;
    rep.blowup_time = e.time;
    return rep;
  }
  rep.steps = static_cast<int>(std::llround(cfg.T / cfg.dt));
  const double init = norm(x0, sys.state_norm);
  rep.norm_ratio = init > 0.0 ? norm(traj.states.back()[0], sys.state_norm) / init : 0.0;

  const LyapunovFunctional V = LyapunovFunctional::power_sobolev(1, cfg.L);
  const double tol = default_tolerance(traj.dt, x0.h());
  const auto mono = check_decrease(V, traj, {}, [](const GridFunction&, const GridFunction*) {
    return 0.0;
  }, tol);
  rep.checks.push_back({"V_monotone", mono.ok(),
                        std::max(0.0, mono.worst_gap), mono.worst_time, ""});

  const Report oracle_rep = run_oracle_suite(cfg.n_grid, 200, 50, cfg.seed + 17);
  for (const auto& c : oracle_rep.checks) rep.checks.push_back(c);
  return rep;
}

}  // namespace

Report run(const ExperimentConfig& cfg) {
  if (cfg.experiment == "custom") return run_custom(cfg);
  const int which = cfg.experiment == "example1" ? 1 : 2;
  Report rep;
  rep.experiment = cfg.experiment;
  rep.grid_n = cfg.n_grid;
  rep.dt = cfg.dt;

  const ExampleSystems ex = build_example(which, cfg.a, cfg.b, cfg.omega);

  if (wants(cfg, "small_gain")) {
    const auto v = example_small_gain(which, cfg.a, cfg.b, cfg.omega, cfg.c_sg);
    rep.checks.push_back({"small_gain", v.constructible && v.holds,
                          v.worst_ratio, 0.0,
                          v.constructible
                              ? "c_sg=" + std::to_string(v.c_sg)
                              : v.detail});
  }

  GridFunction x10 = cfg.initial_family == "random_bandlimited"
                         ? random_bandlimited(cfg.n_grid, kPi, ex.ic.sys1.bc,
                                              cfg.cutoff, cfg.amplitude, cfg.seed)
                         : sine_modes(cfg.n_grid, kPi, ex.ic.sys1.bc, cfg.modes1);
  GridFunction x20 = cfg.initial_family == "random_bandlimited"
                         ? random_bandlimited(cfg.n_grid, kPi, ex.ic.sys2.bc,
                                              cfg.cutoff, cfg.amplitude, cfg.seed + 1)
                         : sine_modes(cfg.n_grid, kPi, ex.ic.sys2.bc, cfg.modes2);

  // Simulate at full step resolution: the dissipation checks difference V
  // against consecutive steps, and averaging over a recording stride would
  // smear fast transients. Output is decimated to the configured stride.
  Trajectory traj;
  try {
    traj = simulate_interconnection(ex.ic, x10, x20, cfg.T, cfg.dt, 1);
  } catch (const BlowupError& e) {
    rep.blowup = true;
    rep.blowup_time = e.time;
    if (!cfg.output_dir.empty())
      emit_plotdata(e.partial_trajectory, ex, cfg.output_dir, cfg.snapshots);
    return rep;
  }
  rep.steps = static_cast<int>(std::llround(cfg.T / cfg.dt));

  const double init = product_norm(x10, ex.ic.sys1.state_norm, x20, ex.ic.sys2.state_norm);
  const double fin = product_norm(traj.states.back()[0], ex.ic.sys1.state_norm,
                                  traj.states.back()[1], ex.ic.sys2.state_norm);
  rep.norm_ratio = init > 0.0 ? fin / init : 0.0;
  if (wants(cfg, "decay"))
    rep.checks.push_back({"decay", rep.norm_ratio < 0.01, rep.norm_ratio, cfg.T, ""});

  const double tol = default_tolerance(traj.dt, x10.h());
  if (ex.has_certificates) {
    std::vector<GridFunction> in1, in2;
    in1.reserve(traj.size());
    in2.reserve(traj.size());
    for (size_t k = 0; k < traj.size(); ++k) {
      in1.push_back(traj.states[k][1]);  // input to subsystem 1 is x2
      in2.push_back(traj.states[k][0]);
    }
    if (wants(cfg, "dissipation_1")) {
      const auto r = check_dissipation(ex.cert1, traj, in1, tol, 0);
      rep.checks.push_back({"dissipation_1", r.ok(), std::max(0.0, r.worst_gap),
                            r.worst_time, ""});
    }
    if (wants(cfg, "dissipation_2")) {
      const auto r = check_dissipation(ex.cert2, traj, in2, tol, 1);
      rep.checks.push_back({"dissipation_2", r.ok(), std::max(0.0, r.worst_gap),
                            r.worst_time, ""});
    }
    if (wants(cfg, "composite_monotone")) {
      int violations = 0;
      double worst = 0.0, worst_t = 0.0, prev = 0.0;
      for (size_t k = 0; k < traj.size(); ++k) {
        const double v1 = eval_V(ex.cert1.V, traj.states[k][0]);
        const double v2 = eval_V(ex.cert2.V, traj.states[k][1]);
        const double vc = composite_V(ex.weights, v1, v2);
        if (k > 0) {
          const double rise = (vc - prev) / traj.dt;
          if (rise > tol) {
            ++violations;
            if (rise > worst) {
              worst = rise;
              worst_t = traj.times[k];
            }
          }
        }
        prev = vc;
      }
      rep.checks.push_back({"composite_monotone", violations == 0, worst, worst_t,
                            violations ? std::to_string(violations) + " violations" : ""});
    }
  } else {
    rep.checks.push_back({"certificates", false, 0.0, 0.0,
                          "gains unavailable outside the hypothesis region"});
  }

  if (!cfg.output_dir.empty()) {
    Trajectory out;
    out.dt = cfg.dt * cfg.record_stride;
    for (size_t k = 0; k < traj.size(); k += cfg.record_stride) {
      out.times.push_back(traj.times[k]);
      out.states.push_back(traj.states[k]);
    }
    emit_plotdata(out, ex, cfg.output_dir, cfg.snapshots);
    std::ofstream rj(std::filesystem::path(cfg.output_dir) / "report.json");
    rj << rep.to_json() << "\n";
  }
  return rep;
}

Report run_oracle_suite(int grid_n, int n_scalar, int n_grid_cases,
                        std::uint64_t seed) {
  Report rep;
  rep.experiment = "oracles";
  rep.grid_n = grid_n;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.0, 10.0);
  std::uniform_real_distribution<double> wdist(0.1, 10.0);
  std::uniform_real_distribution<double> pdist(1.2, 4.0);

  auto push = [&rep](const std::string& name, double worst_neg, double bound) {
    rep.checks.push_back({name, worst_neg >= -bound, worst_neg, 0.0, ""});
  };

  {
    double worst = 0.0;
    for (int i = 0; i < n_scalar; ++i)
      worst = std::min(worst, oracles::young(mag(rng), mag(rng), wdist(rng), pdist(rng)));
    push("young", worst, 1e-12);
  }
  {
    const ComparisonFn gs[] = {cf_identity(), cf_power(3.0), cf_linear(2.0),
                               cf_power(0.5)};
    double worst = 0.0;
    for (int i = 0; i < n_scalar; ++i)
      worst = std::min(worst, oracles::kinf_ineq(mag(rng), mag(rng), gs[i % 4], wdist(rng)));
    push("kinf", worst, 1e-12);
  }

  const double L = kPi;
  const double h = L / grid_n;
  const double grid_bound = 10.0 * h * h;
  {
    double worst = 0.0;
    for (int i = 0; i < n_grid_cases; ++i) {
      const auto x = random_bandlimited(grid_n, L, BoundaryCondition::neumann(), 6,
                                        1.0, seed + 1000 + i);
      double (*f)(double) = (i % 2 == 0) ? +[](double s) { return s * s; }
                                         : +[](double s) { return s * s * s * s; };
      worst = std::min(worst, oracles::jensen(f, x));
    }
    push("jensen", worst, grid_bound);
  }
  {
    double worst = 0.0;
    const BoundaryCondition dn{EndpointBc::Dirichlet, EndpointBc::Neumann};
    for (int i = 0; i < n_grid_cases; ++i)
      worst = std::min(worst, oracles::poincare(random_bandlimited(
                                  grid_n, L, dn, 6, 1.0, seed + 2000 + i)));
    push("poincare", worst, grid_bound);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < n_grid_cases; ++i)
      worst = std::min(worst,
                       oracles::friedrichs(random_bandlimited(
                           grid_n, L, BoundaryCondition::dirichlet(), 6, 1.0,
                           seed + 3000 + i)));
    push("friedrichs", worst, grid_bound);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < n_grid_cases; ++i) {
      const auto bc = (i % 2 == 0) ? BoundaryCondition::dirichlet()
                                   : BoundaryCondition::neumann();
      worst = std::min(worst, oracles::agmon(random_bandlimited(
                                  grid_n, L, bc, 6, 1.0, seed + 4000 + i)));
    }
    push("agmon", worst, grid_bound);
  }
  {
    const GridFunction sharp(grid_n, L, BoundaryCondition::dirichlet(),
                             [](double l) { return std::sin(l); });
    const double slack = oracles::friedrichs(sharp);
    rep.checks.push_back({"friedrichs_sharp", std::abs(slack) <= 5e-4, slack, 0.0, ""});
  }
  return rep;
}

}  // namespace isscert
