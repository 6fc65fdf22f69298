#ifndef CCNGRAM_CORE_SWEEP_HPP
#define CCNGRAM_CORE_SWEEP_HPP

#include <string>
#include <vector>

#include "core/report.hpp"
#include "core/scenario.hpp"

namespace ccngram::metrics {

// One swept parameter, a value list and a seed replication count. For every
// (value, seed) the gram and ndn runs consume the identical generated world.
struct SweepSpec {
  ScenarioConfig base;
  std::string parameter; // rate | group_count | group_size | link_delay
  std::vector<double> values;
  int seeds = 5;
  int jobs = 0; // 0 = hardware concurrency
};

struct Aggregate {
  double mean = 0;
  double ci95 = 0; // half-width across seeds, 0 for a single seed
  std::uint64_t max = 0;
};

struct ComparisonRow {
  double value = 0;
  int seeds = 0;
  Aggregate gram_table;
  Aggregate ndn_table;
  Aggregate gram_delay_ms;
  Aggregate ndn_delay_ms;
};

struct ComparisonTable {
  std::string parameter;
  std::vector<ComparisonRow> rows;
  std::string to_csv() const;
};

void apply_parameter(ScenarioConfig& cfg, const std::string& parameter,
                     double value);

// Runs every (value, seed) pair, gram and ndn side by side, and aggregates.
// Sweep points execute concurrently; aggregation order is deterministic.
ComparisonTable run_sweep(const SweepSpec& spec);

} // namespace ccngram::metrics

#endif // CCNGRAM_CORE_SWEEP_HPP
