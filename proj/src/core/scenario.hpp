#ifndef CCNGRAM_CORE_SCENARIO_HPP
#define CCNGRAM_CORE_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/messages.hpp"
#include "core/topology.hpp"

namespace ccngram {

// All knobs of one simulation run. Times are stored in microseconds; the
// textual keys accept the units their names state (link_delay_ms=15,
// duration_s=10, ...).
struct ScenarioConfig {
  std::string protocol = "gram"; // gram | ndn
  int nodes = 200;
  double side_m = 100.0;
  double radius_m = 15.0;
  TimeUs link_delay_us = 15'000;
  TimeUs consumer_link_delay_us = 0;
  int groups = 20;
  int group_size = 20; // consumers per group
  double rate_per_s = 160.0;
  std::size_t cache_capacity = 1000;
  TimeUs duration_us = 10'000'000;
  TimeUs sample_period_us = 100'000;
  TimeUs warmup_us = 1'000'000;
  TimeUs mart_timeout_us = 10'000'000;
  TimeUs gc_period_us = 1'000'000;
  TimeUs pit_lifetime_us = 4'000'000;
  TimeUs join_window_us = 500'000;
  std::uint64_t seed = 1;
  bool trace = false;
  int topology_retries = 64;

  // Throws std::invalid_argument for unknown keys or unparsable values.
  void set(const std::string& key, const std::string& value);
  void validate() const;

  TimeUs request_interval_us() const;
};

// Plain-text config file: one key=value per line, '#' starts a comment.
ScenarioConfig load_config_file(const std::string& path);
void apply_config_text(ScenarioConfig& cfg, const std::string& text);

struct ConsumerSpec {
  EntityId id = 0;
  GroupId group = 0;
  EntityId router = 0;
  TimeUs join_at = 0;
};

// The generated world shared by both protocols of a paired run: topology,
// one producer per group, and consumer attachments with join times. Built
// deterministically from the seed alone so gram and ndn see identical
// inputs.
struct Scenario {
  Topology topo;
  std::uint64_t topology_seed = 0;
  AnchorSet anchors;
  std::vector<ConsumerSpec> consumers;
};

Scenario build_scenario(const ScenarioConfig& cfg);

} // namespace ccngram

#endif // CCNGRAM_CORE_SCENARIO_HPP
