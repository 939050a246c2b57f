#include "isscert.h"

#include <cstring>
#include <exception>
#include <string>

#include "isscert/config.hpp"
#include "isscert/experiment.hpp"

struct isscert_config {
  isscert::Config cfg;
};

struct isscert_report {
  isscert::Report rep;
  std::string json;  // cached for isscert_report_json
};

namespace {

void fill_err(char* err, size_t err_len, const char* msg) {
  if (!err || err_len == 0) return;
  std::strncpy(err, msg, err_len - 1);
  err[err_len - 1] = '\0';
}

isscert_report* wrap(isscert::Report rep) {
  auto* out = new isscert_report{std::move(rep), {}};
  out->json = out->rep.to_json();
  return out;
}

int status_of(const isscert::Report& rep) {
  if (rep.blowup) return ISSCERT_BLOWUP;
  return rep.all_passed() ? ISSCERT_OK : ISSCERT_CHECKS_FAILED;
}

}  // namespace

extern "C" {

const char* isscert_version(void) { return "1.0.0"; }

isscert_config* isscert_config_load(const char* path, char* err, size_t err_len) {
  if (!path) {
    fill_err(err, err_len, "path is null");
    return nullptr;
  }
  try {
    return new isscert_config{isscert::Config::from_file(path)};
  } catch (const std::exception& e) {
    fill_err(err, err_len, e.what());
    return nullptr;
  }
}

isscert_config* isscert_config_parse(const char* text, char* err, size_t err_len) {
  if (!text) {
    fill_err(err, err_len, "text is null");
    return nullptr;
  }
  try {
    return new isscert_config{isscert::Config::from_string(text)};
  } catch (const std::exception& e) {
    fill_err(err, err_len, e.what());
    return nullptr;
  }
}

int isscert_config_set(isscert_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return ISSCERT_USAGE_ERROR;
  cfg->cfg.set(key, value);
  return ISSCERT_OK;
}

void isscert_config_free(isscert_config* cfg) { delete cfg; }

int isscert_run(const isscert_config* cfg, isscert_report** out, char* err,
                size_t err_len) {
  if (!cfg || !out) {
    fill_err(err, err_len, "null argument");
    return ISSCERT_USAGE_ERROR;
  }
  *out = nullptr;
  try {
    const auto ec = isscert::ExperimentConfig::parse(cfg->cfg);
    *out = wrap(isscert::run(ec));
    return status_of((*out)->rep);
  } catch (const isscert::ConfigError& e) {
    fill_err(err, err_len, e.what());
    return ISSCERT_USAGE_ERROR;
  } catch (const std::exception& e) {
    fill_err(err, err_len, e.what());
    return ISSCERT_INTERNAL_ERROR;
  }
}

int isscert_check_smallgain(const isscert_config* cfg, isscert_report** out,
                            char* err, size_t err_len) {
  if (!cfg || !out) {
    fill_err(err, err_len, "null argument");
    return ISSCERT_USAGE_ERROR;
  }
  *out = nullptr;
  try {
    const auto ec = isscert::ExperimentConfig::parse(cfg->cfg);
    if (ec.experiment == "custom") {
      fill_err(err, err_len, "check-smallgain needs experiment = example1 or example2");
      return ISSCERT_USAGE_ERROR;
    }
    const int which = ec.experiment == "example1" ? 1 : 2;
    const auto v = isscert::example_small_gain(which, ec.a, ec.b, ec.omega, ec.c_sg);
    isscert::Report rep;
    rep.experiment = ec.experiment;
    rep.checks.push_back({"small_gain", v.constructible && v.holds, v.worst_ratio,
                          0.0,
                          v.constructible ? "c_sg=" + std::to_string(v.c_sg)
                                          : v.detail});
    *out = wrap(std::move(rep));
    return status_of((*out)->rep);
  } catch (const isscert::ConfigError& e) {
    fill_err(err, err_len, e.what());
    return ISSCERT_USAGE_ERROR;
  } catch (const std::exception& e) {
    fill_err(err, err_len, e.what());
    return ISSCERT_INTERNAL_ERROR;
  }
}

int isscert_run_oracles(isscert_report** out, char* err, size_t err_len) {
  if (!out) {
    fill_err(err, err_len, "null argument");
    return ISSCERT_USAGE_ERROR;
  }
  *out = nullptr;
  try {
    *out = wrap(isscert::run_oracle_suite());
    return status_of((*out)->rep);
  } catch (const std::exception& e) {
    fill_err(err, err_len, e.what());
    return ISSCERT_INTERNAL_ERROR;
  }
}

const char* isscert_report_json(const isscert_report* rep) {
  return rep ? rep->json.c_str() : nullptr;
}

int isscert_report_passed(const isscert_report* rep) {
  return rep && rep->rep.all_passed() ? 1 : 0;
}

int isscert_report_blowup(const isscert_report* rep) {
  return rep && rep->rep.blowup ? 1 : 0;
}

int isscert_report_num_checks(const isscert_report* rep) {
  return rep ? static_cast<int>(rep->rep.checks.size()) : 0;
}

const char* isscert_report_check_name(const isscert_report* rep, int i) {
  if (!rep || i < 0 || i >= static_cast<int>(rep->rep.checks.size())) return nullptr;
  return rep->rep.checks[i].check.c_str();
}

int isscert_report_check_passed(const isscert_report* rep, int i) {
  if (!rep || i < 0 || i >= static_cast<int>(rep->rep.checks.size())) return 0;
  return rep->rep.checks[i].passed ? 1 : 0;
}

void isscert_report_free(isscert_report* rep) { delete rep; }

}  // extern "C"
