#include "core/oracle.hpp"

#include <stdexcept>

#include "core/engine.hpp"

namespace ccngram {

namespace {

ScenarioConfig oracle_base_config() {
  ScenarioConfig cfg;
  cfg.protocol = "gram";
  cfg.side_m = 100.0;
  cfg.radius_m = 1.5; // matches make_chain spacing
  cfg.link_delay_us = 15'000;
  cfg.rate_per_s = 160.0;
  cfg.cache_capacity = 1000;
  cfg.duration_us = 500'000;
  cfg.sample_period_us = 100'000;
  cfg.warmup_us = 0;
  cfg.join_window_us = 0;
  cfg.trace = true;
  return cfg;
}

} // namespace

std::vector<std::string> oracle_names() {
  return {"chain2", "chain5_split", "chain5_shared"};
}

OracleCase make_oracle(const std::string& name) {
  OracleCase oc;
  oc.name = name;
  oc.config = oracle_base_config();
  oc.golden_file = name + ".trace";
  if (name == "chain2") {
    oc.config.nodes = 2;
    oc.config.groups = 1;
    oc.config.group_size = 1;
    oc.scenario.topo = make_chain(2, oc.config.link_delay_us);
    oc.scenario.anchors = {0};
    oc.scenario.consumers = {{2, 0, 1, 0}};
  } else if (name == "chain5_split") {
    oc.config.nodes = 5;
    oc.config.groups = 2;
    oc.config.group_size = 1;
    oc.scenario.topo = make_chain(5, oc.config.link_delay_us);
    oc.scenario.anchors = {0, 0};
    oc.scenario.consumers = {{5, 0, 2, 0}, {6, 1, 4, 0}};
  } else if (name == "chain5_shared") {
    oc.config.nodes = 5;
    oc.config.groups = 1;
    oc.config.group_size = 2;
    oc.scenario.topo = make_chain(5, oc.config.link_delay_us);
    oc.scenario.anchors = {0};
    oc.scenario.consumers = {{5, 0, 2, 0}, {6, 0, 4, 0}};
  } else {
    throw std::invalid_argument("unknown oracle scenario: " + name);
  }
  return oc;
}

RunReport run_oracle(const std::string& name) {
  OracleCase oc = make_oracle(name);
  return sim::run_with_scenario(oc.config, oc.scenario);
}

} // namespace ccngram
