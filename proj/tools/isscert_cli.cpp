// Command-line front end. Talks to the library exclusively through the C API
// in isscert.h, the same surface foreign-language callers get.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isscert.h"

namespace {

struct ConfigHandle {
  isscert_config* cfg = nullptr;
  ~ConfigHandle() { isscert_config_free(cfg); }
};

struct ReportHandle {
  isscert_report* rep = nullptr;
  ~ReportHandle() { isscert_report_free(rep); }
};

void print_checks(const isscert_report* rep) {
  const int n = isscert_report_num_checks(rep);
  for (int i = 0; i < n; ++i) {
    std::printf("%-24s %s\n", isscert_report_check_name(rep, i),
                isscert_report_check_passed(rep, i) ? "pass" : "FAIL");
  }
  if (isscert_report_blowup(rep)) std::printf("%-24s %s\n", "simulation", "BLOW-UP");
}

int load_config(const std::string& path, ConfigHandle& handle) {
  char err[512] = {0};
  handle.cfg = isscert_config_load(path.c_str(), err, sizeof err);
  if (!handle.cfg) {
    std::fprintf(stderr, "error: %s\n", err);
    return ISSCERT_USAGE_ERROR;
  }
  return ISSCERT_OK;
}

// "a=0.0:0.9:10" -> key params.a, 10 evenly spaced values in [0.0, 0.9].
struct SweepSpec {
  std::string key;
  double lo = 0.0, hi = 0.0;
  int count = 0;
};

bool parse_sweep(const std::string& text, SweepSpec& out) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) return false;
  std::string name = text.substr(0, eq);
  if (name.empty()) return false;
  out.key = name.find('.') == std::string::npos ? "params." + name : name;
  const std::string range = text.substr(eq + 1);
  const auto c1 = range.find(':');
  const auto c2 = range.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) return false;
  try {
    out.lo = std::stod(range.substr(0, c1));
    out.hi = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
    out.count = std::stoi(range.substr(c2 + 1));
  } catch (...) {
    return false;
  }
  return out.count >= 1;
}

int cmd_run(const std::string& config_path, const std::string& output_dir) {
  ConfigHandle cfg;
  if (int rc = load_config(config_path, cfg)) return rc;
  if (!output_dir.empty())
    isscert_config_set(cfg.cfg, "output_dir", output_dir.c_str());
  char err[512] = {0};
  ReportHandle rep;
  const int rc = isscert_run(cfg.cfg, &rep.rep, err, sizeof err);
  if (!rep.rep) {
    std::fprintf(stderr, "error: %s\n", err);
    return rc == ISSCERT_OK ? ISSCERT_INTERNAL_ERROR : rc;
  }
  print_checks(rep.rep);
  return rc;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::string& output_dir) {
  SweepSpec spec;
  if (!parse_sweep(param, spec)) {
    std::fprintf(stderr, "error: --param expects name=lo:hi:count\n");
    return ISSCERT_USAGE_ERROR;
  }
  int worst = ISSCERT_OK;
  for (int i = 0; i < spec.count; ++i) {
    const double v = spec.count == 1
                         ? spec.lo
                         : spec.lo + (spec.hi - spec.lo) * i / (spec.count - 1);
    ConfigHandle cfg;
    if (int rc = load_config(config_path, cfg)) return rc;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    isscert_config_set(cfg.cfg, spec.key.c_str(), buf);
    if (!output_dir.empty()) {
      const std::string dir = output_dir + "/" + spec.key + "_" + std::to_string(i);
      isscert_config_set(cfg.cfg, "output_dir", dir.c_str());
    }
    char err[512] = {0};
    ReportHandle rep;
    const int rc = isscert_run(cfg.cfg, &rep.rep, err, sizeof err);
    if (rc == ISSCERT_USAGE_ERROR || rc == ISSCERT_INTERNAL_ERROR) {
      std::fprintf(stderr, "error (%s=%.17g): %s\n", spec.key.c_str(), v, err);
      return rc;
    }
    const char* tag = rc == ISSCERT_OK ? "pass"
                      : rc == ISSCERT_BLOWUP ? "BLOW-UP"
                                             : "FAIL";
    std::printf("%s=%-22.17g %s\n", spec.key.c_str(), v, tag);
    if (rc > worst) worst = rc;
  }
  return worst;
}

int cmd_oracles() {
  char err[512] = {0};
  ReportHandle rep;
  const int rc = isscert_run_oracles(&rep.rep, err, sizeof err);
  if (!rep.rep) {
    std::fprintf(stderr, "error: %s\n", err);
    return ISSCERT_INTERNAL_ERROR;
  }
  print_checks(rep.rep);
  return rc;
}

int cmd_check_smallgain(const std::string& config_path) {
  ConfigHandle cfg;
  if (int rc = load_config(config_path, cfg)) return rc;
  char err[512] = {0};
  ReportHandle rep;
  const int rc = isscert_check_smallgain(cfg.cfg, &rep.rep, err, sizeof err);
  if (!rep.rep) {
    std::fprintf(stderr, "error: %s\n", err);
    return rc == ISSCERT_OK ? ISSCERT_INTERNAL_ERROR : rc;
  }
  std::printf("%s\n", isscert_report_json(rep.rep));
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parabolic PDE interconnection simulator and stability checker"};
  app.require_subcommand(1);

  std::string config_path, output_dir, param;

  auto* run = app.add_subcommand("run", "Run one experiment from a config file");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--output", output_dir, "output directory for CSV/JSON artifacts");

  auto* sweep = app.add_subcommand("sweep", "Run the experiment across a parameter range");
  sweep->add_option("config", config_path, "config file")->required();
  sweep->add_option("--param", param, "sweep spec, e.g. a=0.0:0.9:10")->required();
  sweep->add_option("--output", output_dir, "base output directory");

  app.add_subcommand("oracles", "Run the inequality oracle suite");

  auto* sg = app.add_subcommand("check-smallgain", "Evaluate the cyclic gain condition only");
  sg->add_option("config", config_path, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ISSCERT_USAGE_ERROR;
  }

  if (app.got_subcommand("run")) return cmd_run(config_path, output_dir);
  if (app.got_subcommand("sweep")) return cmd_sweep(config_path, param, output_dir);
  if (app.got_subcommand("oracles")) return cmd_oracles();
  if (app.got_subcommand("check-smallgain")) return cmd_check_smallgain(config_path);
  return ISSCERT_USAGE_ERROR;
}
