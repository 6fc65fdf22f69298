#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "ccngram/ccngram.h"

namespace {

void set_small_world(ccn_config* cfg) {
  REQUIRE(ccn_config_set(cfg, "nodes", "30") == CCN_OK);
  REQUIRE(ccn_config_set(cfg, "side_m", "50") == CCN_OK);
  REQUIRE(ccn_config_set(cfg, "radius_m", "18") == CCN_OK);
  REQUIRE(ccn_config_set(cfg, "groups", "2") == CCN_OK);
  REQUIRE(ccn_config_set(cfg, "group_size", "2") == CCN_OK);
  REQUIRE(ccn_config_set(cfg, "duration_s", "2") == CCN_OK);
  REQUIRE(ccn_config_set(cfg, "warmup_s", "0.5") == CCN_OK);
  REQUIRE(ccn_config_set(cfg, "seed", "4") == CCN_OK);
}

} // namespace

TEST_CASE("version and error strings are always available") {
  CHECK(std::strlen(ccn_version()) > 0);
  CHECK(ccn_last_error() != nullptr);
}

TEST_CASE("config rejects unknown keys and bad values") {
  ccn_config* cfg = ccn_config_create();
  REQUIRE(cfg != nullptr);
  CHECK(ccn_config_set(cfg, "protocol", "ndn") == CCN_OK);
  CHECK(ccn_config_set(cfg, "bogus", "1") == CCN_ERR_INVALID);
  CHECK(std::string(ccn_last_error()).find("bogus") != std::string::npos);
  CHECK(ccn_config_set(cfg, "nodes", "abc") == CCN_ERR_INVALID);
  CHECK(ccn_config_set(nullptr, "nodes", "1") == CCN_ERR_INVALID);
  ccn_config_destroy(cfg);
}

TEST_CASE("an invalid scenario fails the run with an error message") {
  ccn_config* cfg = ccn_config_create();
  REQUIRE(ccn_config_set(cfg, "nodes", "0") == CCN_OK);
  ccn_report* report = ccn_run(cfg);
  CHECK(report == nullptr);
  CHECK(std::strlen(ccn_last_error()) > 0);
  ccn_config_destroy(cfg);
}

TEST_CASE("running a scenario exposes stats, csv and trace") {
  ccn_config* cfg = ccn_config_create();
  set_small_world(cfg);
  REQUIRE(ccn_config_set(cfg, "trace", "1") == CCN_OK);

  ccn_report* report = ccn_run(cfg);
  REQUIRE_MESSAGE(report != nullptr, ccn_last_error());

  double table_mean = 0, delay_mean = 0, samples = 0;
  CHECK(ccn_report_stat(report, "table_mean", &table_mean) == CCN_OK);
  CHECK(ccn_report_stat(report, "delay_mean_ms", &delay_mean) == CCN_OK);
  CHECK(ccn_report_stat(report, "delay_samples", &samples) == CCN_OK);
  CHECK(table_mean > 0);
  CHECK(table_mean <= 2.0);
  CHECK(delay_mean > 0);
  CHECK(samples > 0);
  CHECK(ccn_report_stat(report, "nope", &table_mean) == CCN_ERR_INVALID);

  double mi = 0;
  CHECK(ccn_report_stat(report, "tx_MI", &mi) == CCN_OK);
  CHECK(mi > 0);

  CHECK(std::strlen(ccn_report_trace(report)) > 0);
  CHECK(std::string(ccn_report_topology(report)).find("node 0 ") == 0);
  CHECK(std::string(ccn_report_summary_csv(report)).find("protocol,") == 0);

  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "ccngram_capi_test";
  fs::create_directories(dir);
  CHECK(ccn_report_write_csv(report, dir.string().c_str()) == CCN_OK);
  CHECK(fs::exists(dir / "tables.csv"));
  CHECK(fs::exists(dir / "delays.csv"));
  CHECK(fs::exists(dir / "summary.csv"));
  CHECK(fs::exists(dir / "trace.log"));
  fs::remove_all(dir);

  ccn_report_destroy(report);
  ccn_config_destroy(cfg);
}

TEST_CASE("config files load over the defaults") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "ccngram_capi_cfg.txt";
  {
    std::ofstream out(path);
    out << "protocol=ndn\nrate_per_s=320\n";
  }
  ccn_config* cfg = ccn_config_create();
  CHECK(ccn_config_load_file(cfg, path.string().c_str()) == CCN_OK);
  CHECK(ccn_config_load_file(cfg, "/no/such/file") == CCN_ERR_IO);
  ccn_config_destroy(cfg);
  fs::remove(path);
}

TEST_CASE("sweeps run paired protocols and expose cells") {
  ccn_config* cfg = ccn_config_create();
  set_small_world(cfg);
  ccn_sweep* sweep = ccn_sweep_create(cfg, "rate", "50,100", 1, 2);
  REQUIRE_MESSAGE(sweep != nullptr, ccn_last_error());
  CHECK(ccn_sweep_row_count(sweep) == 0); // not run yet
  REQUIRE(ccn_sweep_run(sweep) == CCN_OK);
  REQUIRE(ccn_sweep_row_count(sweep) == 2);

  double v0 = 0, v1 = 0, gram0 = 0, gram1 = 0, ndn0 = 0;
  CHECK(ccn_sweep_cell(sweep, 0, "value", &v0) == CCN_OK);
  CHECK(ccn_sweep_cell(sweep, 1, "value", &v1) == CCN_OK);
  CHECK(v0 == 50);
  CHECK(v1 == 100);
  CHECK(ccn_sweep_cell(sweep, 0, "gram_table_mean", &gram0) == CCN_OK);
  CHECK(ccn_sweep_cell(sweep, 1, "gram_table_mean", &gram1) == CCN_OK);
  CHECK(ccn_sweep_cell(sweep, 0, "ndn_table_mean", &ndn0) == CCN_OK);
  CHECK(gram0 == gram1); // per-group state is rate invariant
  CHECK(ndn0 > 0);
  CHECK(ccn_sweep_cell(sweep, 0, "bogus", &v0) == CCN_ERR_INVALID);
  CHECK(ccn_sweep_cell(sweep, 9, "value", &v0) == CCN_ERR_INVALID);
  CHECK(std::string(ccn_sweep_csv(sweep)).find("parameter,value") == 0);

  ccn_sweep_destroy(sweep);
  CHECK(ccn_sweep_create(cfg, "nope", "1", 1, 1) == nullptr);
  CHECK(ccn_sweep_create(cfg, "rate", "", 1, 1) == nullptr);
  ccn_config_destroy(cfg);
}

TEST_CASE("oracle scenarios are listed and runnable") {
  REQUIRE(ccn_oracle_count() == 3);
  for (int i = 0; i < ccn_oracle_count(); ++i) {
    const char* name = ccn_oracle_name(i);
    REQUIRE(name != nullptr);
    ccn_report* report = ccn_oracle_run(name);
    REQUIRE_MESSAGE(report != nullptr, ccn_last_error());
    CHECK(std::strlen(ccn_report_trace(report)) > 0);
    ccn_report_destroy(report);
  }
  CHECK(ccn_oracle_name(99) == nullptr);
  CHECK(ccn_oracle_run("nope") == nullptr);
}
