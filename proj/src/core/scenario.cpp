#include "core/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "core/rng.hpp"

namespace ccngram {

namespace {

double parse_double(const std::string& value) {
  std::size_t pos = 0;
  double d = std::stod(value, &pos);
  if (pos != value.size()) {
    throw std::invalid_argument("trailing characters in number: " + value);
  }
  return d;
}

std::int64_t parse_int(const std::string& value) {
  std::size_t pos = 0;
  long long v = std::stoll(value, &pos);
  if (pos != value.size()) {
    throw std::invalid_argument("trailing characters in integer: " + value);
  }
  return v;
}

TimeUs seconds_to_us(double s) { return static_cast<TimeUs>(std::llround(s * 1e6)); }
TimeUs millis_to_us(double ms) { return static_cast<TimeUs>(std::llround(ms * 1e3)); }

} // namespace

void ScenarioConfig::set(const std::string& key, const std::string& value) {
  if (key == "protocol") {
    protocol = value;
  } else if (key == "nodes") {
    nodes = static_cast<int>(parse_int(value));
  } else if (key == "side_m") {
    side_m = parse_double(value);
  } else if (key == "radius_m") {
    radius_m = parse_double(value);
  } else if (key == "link_delay_ms") {
    link_delay_us = millis_to_us(parse_double(value));
  } else if (key == "consumer_link_delay_ms") {
    consumer_link_delay_us = millis_to_us(parse_double(value));
  } else if (key == "groups") {
    groups = static_cast<int>(parse_int(value));
  } else if (key == "group_size") {
    group_size = static_cast<int>(parse_int(value));
  } else if (key == "rate_per_s") {
    rate_per_s = parse_double(value);
  } else if (key == "cache_capacity") {
    cache_capacity = static_cast<std::size_t>(parse_int(value));
  } else if (key == "duration_s") {
    duration_us = seconds_to_us(parse_double(value));
  } else if (key == "sample_period_ms") {
    sample_period_us = millis_to_us(parse_double(value));
  } else if (key == "warmup_s") {
    warmup_us = seconds_to_us(parse_double(value));
  } else if (key == "mart_timeout_s") {
    mart_timeout_us = seconds_to_us(parse_double(value));
  } else if (key == "gc_period_s") {
    gc_period_us = seconds_to_us(parse_double(value));
  } else if (key == "pit_lifetime_s") {
    pit_lifetime_us = seconds_to_us(parse_double(value));
  } else if (key == "join_window_ms") {
    join_window_us = millis_to_us(parse_double(value));
  } else if (key == "seed") {
    seed = static_cast<std::uint64_t>(parse_int(value));
  } else if (key == "trace") {
    trace = parse_int(value) != 0;
  } else if (key == "topology_retries") {
    topology_retries = static_cast<int>(parse_int(value));
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

void ScenarioConfig::validate() const {
  if (protocol != "gram" && protocol != "ndn") {
    throw std::invalid_argument("protocol must be gram or ndn");
  }
  if (nodes < 1 || groups < 1 || group_size < 1) {
    throw std::invalid_argument("nodes, groups and group_size must be >= 1");
  }
  if (side_m <= 0 || radius_m <= 0) {
    throw std::invalid_argument("side_m and radius_m must be positive");
  }
  if (rate_per_s <= 0) {
    throw std::invalid_argument("rate_per_s must be positive");
  }
  if (link_delay_us < 0 || consumer_link_delay_us < 0) {
    throw std::invalid_argument("link delays must be non-negative");
  }
  if (sample_period_us <= 0 || gc_period_us <= 0) {
    throw std::invalid_argument("periods must be positive");
  }
  if (duration_us < 0 || warmup_us < 0 || join_window_us < 0) {
    throw std::invalid_argument("durations must be non-negative");
  }
  if (duration_us > 0 && duration_us <= warmup_us) {
    throw std::invalid_argument("duration must exceed the warm-up period");
  }
  if (mart_timeout_us <= 0 || pit_lifetime_us <= 0) {
    throw std::invalid_argument("state lifetimes must be positive");
  }
}

TimeUs ScenarioConfig::request_interval_us() const {
  return static_cast<TimeUs>(std::llround(1e6 / rate_per_s));
}

void apply_config_text(ScenarioConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      continue;
    }
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  " has no '='");
    }
    auto strip = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    cfg.set(strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
  }
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  ScenarioConfig cfg;
  apply_config_text(cfg, buffer.str());
  return cfg;
}

Scenario build_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  Scenario scn;
  scn.topo = generate_connected(cfg.nodes, cfg.side_m, cfg.radius_m,
                                cfg.link_delay_us, cfg.seed,
                                cfg.topology_retries, &scn.topology_seed);

  // Placements come from a stream independent of the topology retries so a
  // paired run is reproducible from the seed alone.
  Rng rng(cfg.seed ^ 0x706c6163656d6e74ULL);
  scn.anchors.resize(cfg.groups);
  EntityId next_id = cfg.nodes;
  for (GroupId g = 0; g < cfg.groups; ++g) {
    scn.anchors[g] = static_cast<int>(rng.next_below(cfg.nodes));
    for (int j = 0; j < cfg.group_size; ++j) {
      int router = static_cast<int>(rng.next_below(cfg.nodes));
      // A consumer colocated with the producer would measure no network at
      // all; redraw unless the graph has a single node.
      while (cfg.nodes > 1 && router == scn.anchors[g]) {
        router = static_cast<int>(rng.next_below(cfg.nodes));
      }
      TimeUs join_at = cfg.join_window_us > 0
                           ? static_cast<TimeUs>(rng.next_below(
                                 static_cast<std::uint64_t>(cfg.join_window_us)))
                           : 0;
      scn.consumers.push_back({next_id++, g, router, join_at});
    }
  }
  return scn;
}

} // namespace ccngram
