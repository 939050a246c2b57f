#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "isscert.h"

namespace {

const char* kShortExample1 =
    "experiment = example1\n"
    "params.a = 0.05\n"
    "params.b = 394.784176043574\n"
    "params.omega = 1.0\n"
    "time.T = 2\n"
    "time.dt = 1e-3\n"
    "checks = small_gain,dissipation_1,dissipation_2,composite_monotone\n";

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("version string is present") {
  REQUIRE(isscert_version() != nullptr);
  CHECK(std::strlen(isscert_version()) > 0);
}

TEST_CASE("config loading errors are reported") {
  char err[256] = {0};
  CHECK(isscert_config_load("/no/such/file.cfg", err, sizeof err) == nullptr);
  CHECK(std::strlen(err) > 0);

  err[0] = '\0';
  CHECK(isscert_config_parse("not a config line\n", err, sizeof err) == nullptr);
  CHECK(std::strlen(err) > 0);

  CHECK(isscert_config_load(nullptr, err, sizeof err) == nullptr);
}

TEST_CASE("oracle suite through the C surface") {
  isscert_report* rep = nullptr;
  char err[256] = {0};
  CHECK(isscert_run_oracles(&rep, err, sizeof err) == ISSCERT_OK);
  REQUIRE(rep != nullptr);
  CHECK(isscert_report_passed(rep) == 1);
  CHECK(isscert_report_blowup(rep) == 0);
  CHECK(isscert_report_num_checks(rep) >= 6);
  for (int i = 0; i < isscert_report_num_checks(rep); ++i) {
    CHECK(isscert_report_check_name(rep, i) != nullptr);
    CHECK(isscert_report_check_passed(rep, i) == 1);
  }
  CHECK(isscert_report_check_name(rep, 10000) == nullptr);
  const char* json = isscert_report_json(rep);
  REQUIRE(json != nullptr);
  CHECK(std::strstr(json, "young") != nullptr);
  isscert_report_free(rep);
}

TEST_CASE("experiment run and report inspection") {
  char err[256] = {0};
  isscert_config* cfg = isscert_config_parse(kShortExample1, err, sizeof err);
  REQUIRE(cfg != nullptr);
  isscert_report* rep = nullptr;
  CHECK(isscert_run(cfg, &rep, err, sizeof err) == ISSCERT_OK);
  REQUIRE(rep != nullptr);
  CHECK(isscert_report_passed(rep) == 1);
  CHECK(isscert_report_num_checks(rep) == 4);
  isscert_report_free(rep);
  isscert_config_free(cfg);
}

TEST_CASE("small-gain verdict flips with the config") {
  char err[256] = {0};
  isscert_config* cfg = isscert_config_parse(kShortExample1, err, sizeof err);
  REQUIRE(cfg != nullptr);
  isscert_report* rep = nullptr;
  CHECK(isscert_check_smallgain(cfg, &rep, err, sizeof err) == ISSCERT_OK);
  isscert_report_free(rep);

  // shrink b to the closed-form boundary
  isscert_config_set(cfg, "params.b", "59.21762640653615");
  rep = nullptr;
  CHECK(isscert_check_smallgain(cfg, &rep, err, sizeof err) == ISSCERT_CHECKS_FAILED);
  REQUIRE(rep != nullptr);
  CHECK(isscert_report_passed(rep) == 0);
  isscert_report_free(rep);
  isscert_config_free(cfg);
}

TEST_CASE("bad experiment name surfaces as usage error") {
  char err[256] = {0};
  isscert_config* cfg = isscert_config_parse("experiment = nonsense\n", err, sizeof err);
  REQUIRE(cfg != nullptr);
  isscert_report* rep = nullptr;
  CHECK(isscert_run(cfg, &rep, err, sizeof err) == ISSCERT_USAGE_ERROR);
  CHECK(rep == nullptr);
  CHECK(std::strlen(err) > 0);
  isscert_config_free(cfg);
}

TEST_CASE("null arguments are rejected, not crashed on") {
  char err[64] = {0};
  CHECK(isscert_run(nullptr, nullptr, err, sizeof err) == ISSCERT_USAGE_ERROR);
  CHECK(isscert_config_set(nullptr, "k", "v") == ISSCERT_USAGE_ERROR);
  CHECK(isscert_report_json(nullptr) == nullptr);
  CHECK(isscert_report_num_checks(nullptr) == 0);
  isscert_report_free(nullptr);
  isscert_config_free(nullptr);
}

TEST_CASE("identical config and seed give byte-identical artifacts") {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "isscert_capi_det";
  fs::remove_all(base);
  std::string text = kShortExample1;
  text += "initial.family = random_bandlimited\ninitial.seed = 42\ntime.T = 1\n";
  for (const char* sub : {"a", "b"}) {
    char err[256] = {0};
    isscert_config* cfg = isscert_config_parse(text.c_str(), err, sizeof err);
    REQUIRE(cfg != nullptr);
    const std::string dir = (base / sub).string();
    isscert_config_set(cfg, "output_dir", dir.c_str());
    isscert_report* rep = nullptr;
    CHECK(isscert_run(cfg, &rep, err, sizeof err) == ISSCERT_OK);
    isscert_report_free(rep);
    isscert_config_free(cfg);
  }
  const std::string csv_a = read_file(base / "a" / "timeseries.csv");
  const std::string csv_b = read_file(base / "b" / "timeseries.csv");
  REQUIRE(!csv_a.empty());
  CHECK(csv_a == csv_b);
  const std::string rep_a = read_file(base / "a" / "report.json");
  CHECK(rep_a == read_file(base / "b" / "report.json"));
  CHECK(!rep_a.empty());
  fs::remove_all(base);
}
