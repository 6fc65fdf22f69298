#include <doctest.h>

#include "core/engine.hpp"
#include "core/oracle.hpp"
#include "core/report.hpp"
#include "core/sweep.hpp"

using namespace ccngram;

namespace {

ScenarioConfig small_world() {
  ScenarioConfig cfg;
  cfg.nodes = 30;
  cfg.side_m = 50;
  cfg.radius_m = 18;
  cfg.groups = 2;
  cfg.group_size = 2;
  cfg.rate_per_s = 100;
  cfg.duration_us = 2'000'000;
  cfg.warmup_us = 500'000;
  cfg.join_window_us = 200'000;
  cfg.seed = 4;
  return cfg;
}

} // namespace

TEST_CASE("chain oracle summarizes to the exact hand-computed delay") {
  RunReport report = run_oracle("chain2");
  Summary s = summarize(report);
  CHECK(s.delay_mean_ms == 30.0); // 2 x 15 ms, exactly
  CHECK(s.delay_p95_ms == 30.0);
  CHECK(s.table_max == 1);
  CHECK(s.table_mean == 1.0); // both routers hold the single group entry
  CHECK(s.rounds_total == s.delay_count);
}

TEST_CASE("summary aggregates behave on degenerate series") {
  RunReport report;
  report.config.warmup_us = 0;

  SUBCASE("all table samples equal makes max equal mean") {
    for (int i = 0; i < 10; ++i) {
      report.table_samples.push_back({1000 + i, 0, 7});
    }
    report.delays.push_back({0, 5, 1, 42'000, 2000});
    Summary s = summarize(report);
    CHECK(s.table_mean == 7.0);
    CHECK(s.table_max == 7);
    CHECK(s.delay_mean_ms == 42.0); // single delivery: mean is that delay
    CHECK(s.delay_p95_ms == 42.0);
  }

  SUBCASE("empty post-warm-up window is an explicit error") {
    CHECK_THROWS_WITH_AS(summarize(report),
                         doctest::Contains("insufficient data"),
                         std::runtime_error);
    report.table_samples.push_back({1000, 0, 1});
    CHECK_THROWS_WITH_AS(summarize(report),
                         doctest::Contains("insufficient data"),
                         std::runtime_error);
  }

  SUBCASE("warm-up samples are excluded") {
    report.config.warmup_us = 1'000'000;
    report.table_samples.push_back({500'000, 0, 100}); // inside warm-up
    report.table_samples.push_back({1'500'000, 0, 4});
    report.delays.push_back({0, 5, 1, 10'000, 500'000}); // inside warm-up
    report.delays.push_back({0, 5, 2, 20'000, 1'500'000});
    Summary s = summarize(report);
    CHECK(s.table_mean == 4.0);
    CHECK(s.delay_count == 1);
    CHECK(s.delay_mean_ms == 20.0);
  }
}

TEST_CASE("a single-point sweep equals the direct runs") {
  metrics::SweepSpec spec;
  spec.base = small_world();
  spec.parameter = "rate";
  spec.values = {100};
  spec.seeds = 1;
  spec.jobs = 1;
  metrics::ComparisonTable table = metrics::run_sweep(spec);
  REQUIRE(table.rows.size() == 1);
  const metrics::ComparisonRow& row = table.rows[0];
  CHECK(row.value == 100);
  CHECK(row.gram_table.ci95 == 0.0);

  ScenarioConfig direct = small_world();
  direct.protocol = "gram";
  Summary gram = summarize(sim::run_scenario(direct));
  direct.protocol = "ndn";
  Summary ndn = summarize(sim::run_scenario(direct));
  CHECK(row.gram_table.mean == gram.table_mean);
  CHECK(row.gram_table.max == gram.table_max);
  CHECK(row.gram_delay_ms.mean == gram.delay_mean_ms);
  CHECK(row.ndn_table.mean == ndn.table_mean);
  CHECK(row.ndn_delay_ms.mean == ndn.delay_mean_ms);
}

TEST_CASE("gram table occupancy is rate invariant within a seed") {
  metrics::SweepSpec spec;
  spec.base = small_world();
  spec.parameter = "rate";
  spec.values = {50, 200};
  spec.seeds = 2;
  metrics::ComparisonTable table = metrics::run_sweep(spec);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].gram_table.mean == table.rows[1].gram_table.mean);
  CHECK(table.rows[0].gram_table.max == table.rows[1].gram_table.max);

  std::string csv = table.to_csv();
  CHECK(csv.find("parameter,value,seeds") == 0);
  CHECK(csv.find("\nrate,50,") != std::string::npos);
  CHECK(csv.find("\nrate,200,") != std::string::npos);
}

TEST_CASE("sweep errors carry the offending point") {
  metrics::SweepSpec spec;
  spec.base = small_world();
  spec.base.duration_us = 600'000; // below the warm-up: summarize must fail
  spec.base.warmup_us = 700'000;
  spec.parameter = "rate";
  spec.values = {100};
  spec.seeds = 1;
  CHECK_THROWS_WITH_AS(metrics::run_sweep(spec),
                       doctest::Contains("value=100"), std::runtime_error);
}

TEST_CASE("config text parsing and overrides") {
  ScenarioConfig cfg;
  apply_config_text(cfg, "protocol = ndn\n# comment line\n"
                         "rate_per_s=800\nlink_delay_ms = 30 # inline\n"
                         "\nseed=9\n");
  CHECK(cfg.protocol == "ndn");
  CHECK(cfg.rate_per_s == 800);
  CHECK(cfg.link_delay_us == 30'000);
  CHECK(cfg.seed == 9);
  CHECK_THROWS_AS(cfg.set("no_such_key", "1"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_text(cfg, "rate_per_s 800\n"),
                  std::invalid_argument);

  ScenarioConfig bad;
  bad.nodes = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ScenarioConfig{};
  bad.duration_us = 500'000;
  bad.warmup_us = 500'000;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.duration_us = 0; // degenerate but allowed
  CHECK_NOTHROW(bad.validate());
}
