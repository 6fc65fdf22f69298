#ifndef CCNGRAM_CORE_REPORT_HPP
#define CCNGRAM_CORE_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/messages.hpp"
#include "core/scenario.hpp"

namespace ccngram {

struct TableSample {
  TimeUs t = 0;
  int node = 0;
  std::uint32_t entries = 0;
};

struct DelayRecord {
  GroupId group = 0;
  EntityId consumer = 0;
  std::uint64_t counter = 0;
  TimeUs delay = 0;
  TimeUs at = 0; // receive time, used for warm-up filtering
};

struct MartRecord {
  int node = 0;
  GroupId group = 0;
  std::uint64_t mc = 0;
  std::vector<EntityId> next_hops; // ascending
  std::vector<EntityId> receivers; // ascending
};

struct RunReport {
  ScenarioConfig config;
  std::uint64_t topology_seed = 0;
  std::string topology_text;
  std::vector<TableSample> table_samples;
  std::vector<DelayRecord> delays;
  std::map<std::string, std::uint64_t> tx_counts;
  std::uint64_t consumer_failures = 0;
  std::vector<MartRecord> final_mart;        // gram runs only
  std::vector<std::uint64_t> source_counters; // per group, final mc at source
  std::string trace; // empty unless tracing was enabled
};

std::string tables_csv(const RunReport& report);
std::string delays_csv(const RunReport& report);

// Aggregates over the post-warm-up window.
struct Summary {
  double table_mean = 0;
  std::uint64_t table_max = 0;
  std::uint64_t table_sample_count = 0;
  std::uint64_t table_entry_sum = 0; // exact integer companion of table_mean
  double delay_mean_ms = 0;
  double delay_p95_ms = 0;
  std::uint64_t delay_count = 0;
  std::map<std::string, std::uint64_t> tx_counts;
  std::uint64_t consumer_failures = 0;
  std::uint64_t rounds_total = 0; // sum of final source counters
};

// Throws std::runtime_error("insufficient data: ...") when the post-warm-up
// window holds no table samples or no delay samples.
Summary summarize(const RunReport& report);

std::string summary_csv(const RunReport& report, const Summary& summary);

// Writes tables.csv, delays.csv, summary.csv (and trace.log when present)
// under dir, which must exist.
void write_report_files(const RunReport& report, const std::string& dir);

} // namespace ccngram

#endif // CCNGRAM_CORE_REPORT_HPP
