#include "core/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ccngram {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << content;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

} // namespace

std::string tables_csv(const RunReport& report) {
  std::string out = "time_ms,node,entries\n";
  for (const TableSample& s : report.table_samples) {
    out += format_time_ms(s.t);
    out += ',';
    out += std::to_string(s.node);
    out += ',';
    out += std::to_string(s.entries);
    out += '\n';
  }
  return out;
}

std::string delays_csv(const RunReport& report) {
  std::string out = "group,consumer,counter,delay_ms\n";
  for (const DelayRecord& d : report.delays) {
    out += group_name(d.group);
    out += ',';
    out += std::to_string(d.consumer);
    out += ',';
    out += std::to_string(d.counter);
    out += ',';
    out += format_time_ms(d.delay);
    out += '\n';
  }
  return out;
}

Summary summarize(const RunReport& report) {
  const TimeUs warmup = report.config.warmup_us;
  Summary s;
  for (const TableSample& t : report.table_samples) {
    if (t.t <= warmup) {
      continue;
    }
    ++s.table_sample_count;
    s.table_entry_sum += t.entries;
    s.table_max = std::max<std::uint64_t>(s.table_max, t.entries);
  }
  if (s.table_sample_count == 0) {
    throw std::runtime_error(
        "insufficient data: no table samples after the warm-up window");
  }
  s.table_mean = static_cast<double>(s.table_entry_sum) /
                 static_cast<double>(s.table_sample_count);

  std::vector<TimeUs> delays;
  delays.reserve(report.delays.size());
  for (const DelayRecord& d : report.delays) {
    if (d.at > warmup) {
      delays.push_back(d.delay);
    }
  }
  if (delays.empty()) {
    throw std::runtime_error(
        "insufficient data: no delay samples after the warm-up window");
  }
  std::sort(delays.begin(), delays.end());
  std::uint64_t sum = 0;
  for (TimeUs d : delays) {
    sum += static_cast<std::uint64_t>(d);
  }
  s.delay_count = delays.size();
  s.delay_mean_ms =
      static_cast<double>(sum) / static_cast<double>(delays.size()) / 1000.0;
  const std::size_t rank =
      (delays.size() * 95 + 99) / 100; // nearest-rank p95, 1-based
  s.delay_p95_ms = static_cast<double>(delays[rank - 1]) / 1000.0;

  s.tx_counts = report.tx_counts;
  s.consumer_failures = report.consumer_failures;
  for (std::uint64_t c : report.source_counters) {
    s.rounds_total += c;
  }
  return s;
}

std::string summary_csv(const RunReport& report, const Summary& summary) {
  const ScenarioConfig& cfg = report.config;
  auto tx = [&](const char* tag) -> std::uint64_t {
    auto it = summary.tx_counts.find(tag);
    return it == summary.tx_counts.end() ? 0 : it->second;
  };
  std::string out =
      "protocol,seed,topology_seed,nodes,groups,group_size,rate_per_s,"
      "link_delay_ms,duration_s,table_mean,table_max,delay_mean_ms,"
      "delay_p95_ms,delay_samples,consumer_failures,rounds_total,"
      "tx_MI,tx_MP,tx_MR,tx_NI,tx_ND,tx_NN\n";
  out += cfg.protocol;
  out += ',' + std::to_string(cfg.seed);
  out += ',' + std::to_string(report.topology_seed);
  out += ',' + std::to_string(cfg.nodes);
  out += ',' + std::to_string(cfg.groups);
  out += ',' + std::to_string(cfg.group_size);
  out += ',' + format_double(cfg.rate_per_s);
  out += ',' + format_time_ms(cfg.link_delay_us);
  out += ',' + format_double(static_cast<double>(cfg.duration_us) / 1e6);
  out += ',' + format_double(summary.table_mean);
  out += ',' + std::to_string(summary.table_max);
  out += ',' + format_double(summary.delay_mean_ms);
  out += ',' + format_double(summary.delay_p95_ms);
  out += ',' + std::to_string(summary.delay_count);
  out += ',' + std::to_string(summary.consumer_failures);
  out += ',' + std::to_string(summary.rounds_total);
  out += ',' + std::to_string(tx("MI"));
  out += ',' + std::to_string(tx("MP"));
  out += ',' + std::to_string(tx("MR"));
  out += ',' + std::to_string(tx("NI"));
  out += ',' + std::to_string(tx("ND"));
  out += ',' + std::to_string(tx("NN"));
  out += '\n';
  return out;
}

void write_report_files(const RunReport& report, const std::string& dir) {
  write_file(dir + "/tables.csv", tables_csv(report));
  write_file(dir + "/delays.csv", delays_csv(report));
  write_file(dir + "/summary.csv", summary_csv(report, summarize(report)));
  if (!report.trace.empty()) {
    write_file(dir + "/trace.log", report.trace);
  }
}

} // namespace ccngram
