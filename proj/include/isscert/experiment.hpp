#ifndef ISSCERT_EXPERIMENT_HPP
#define ISSCERT_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isscert/certify.hpp"
#include "isscert/comparison.hpp"
#include "isscert/config.hpp"
#include "isscert/pde.hpp"

namespace isscert {

/// The two reaction-diffusion interconnections studied end to end, with the
/// certificates their analysis provides. which is 1 or 2.
struct ExampleSystems {
  InterconnectionSpec ic;
  DissipationCertificate cert1, cert2;
  double a = 0.0, b = 0.0, omega = 1.0;
  LambdaWeights weights;  // psi = 0 weights for the composite functional
  // False outside the hypothesis region (a < 1, b >= 0, omega <= 2(1-a)),
  // where the certificate gains are not well-classed.
  bool has_certificates = false;
};

ExampleSystems build_example(int which, double a, double b, double omega);

// Closed-form reduction of the cyclic gain condition for the example gains:
// exists c > 1 iff 6 pi^2 / b < omega <= 2 (1 - a).
bool closed_form_small_gain(double a, double b, double omega);

// Largest scale constant passing the closed-form reduction: sqrt(b w / 6 pi^2).
double max_small_gain_scale(double b, double omega);

struct SmallGainVerdict {
  bool holds = false;
  bool constructible = false;  // gains well-classed and c_sg > 1 available
  double c_sg = 0.0;
  double worst_ratio = 0.0;
  std::string detail;
};

// Existence-style verdict for the example gains: picks c_sg just below the
// closed-form maximum unless an explicit value is given, then runs the
// numeric chain check on a 64-point log grid in [1e-4, 1e4].
SmallGainVerdict example_small_gain(int which, double a, double b, double omega,
                                    std::optional<double> c_sg = std::nullopt);

struct CheckResult {
  std::string check;
  bool passed = false;
  double worst_violation = 0.0;
  double time = 0.0;  // trajectory time of the worst violation, if any
  std::string detail;
};

struct Report {
  std::string experiment;
  std::vector<CheckResult> checks;
  bool blowup = false;
  double blowup_time = 0.0;
  double norm_ratio = 0.0;  // final / initial product-space norm
  // runtime metadata (deterministic)
  int grid_n = 0;
  int steps = 0;
  double dt = 0.0;

  bool all_passed() const;
  const CheckResult* find(const std::string& name) const;
  std::string to_json() const;
};

struct ExperimentConfig {
  std::string experiment;  // example1 | example2 | custom
  double a = 0.05, b = 0.0, omega = 1.0;
  std::optional<double> c_sg;
  int n_grid = 256;
  double L = 0.0;
  double dt = 1e-3, T = 20.0;
  int record_stride = 10;
  std::string initial_family = "sine_modes";
  std::vector<std::pair<int, double>> modes1, modes2;
  int cutoff = 4;
  double amplitude = 0.5;
  std::uint64_t seed = 1;
  std::vector<std::string> checks;
  std::string output_dir;
  bool snapshots = false;
  double c_diff = 1.0;  // custom experiment
  std::vector<std::string> warnings;

  static ExperimentConfig parse(const Config& cfg);
};

Report run(const ExperimentConfig& cfg);

// Appendix-inequality suite over seeded random samples; each result's
// worst_violation is the most negative slack observed (0 if none).
Report run_oracle_suite(int grid_n = 256, int n_scalar = 1000, int n_grid_cases = 200,
                        std::uint64_t seed = 2024);

// Seeded band-limited sample field; zero_left/zero_right select the
// boundary-compatible sine families.
GridFunction random_bandlimited(int n, double L, BoundaryCondition bc, int cutoff,
                                double amplitude, std::uint64_t seed);

// t, ||x1||, ||x2||, V1, V2, V_composite as decimal CSV (17 significant
// digits); per-time snapshot files when snapshots is set.
void emit_plotdata(const Trajectory& traj, const ExampleSystems& ex,
                   const std::string& dir, bool snapshots);

}  // namespace isscert

#endif
