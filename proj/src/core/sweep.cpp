#include "core/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "core/engine.hpp"

namespace ccngram::metrics {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

Aggregate aggregate(const std::vector<double>& means,
                    const std::vector<std::uint64_t>& maxima) {
  Aggregate a;
  const std::size_t k = means.size();
  double sum = 0;
  for (double m : means) {
    sum += m;
  }
  a.mean = sum / static_cast<double>(k);
  if (k > 1) {
    double ss = 0;
    for (double m : means) {
      ss += (m - a.mean) * (m - a.mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(k - 1));
    a.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(k));
  }
  for (std::uint64_t m : maxima) {
    a.max = std::max(a.max, m);
  }
  return a;
}

struct PairResult {
  Summary gram;
  Summary ndn;
};

} // namespace

void apply_parameter(ScenarioConfig& cfg, const std::string& parameter,
                     double value) {
  if (parameter == "rate") {
    cfg.rate_per_s = value;
  } else if (parameter == "group_count") {
    cfg.groups = static_cast<int>(value);
  } else if (parameter == "group_size") {
    cfg.group_size = static_cast<int>(value);
  } else if (parameter == "link_delay") {
    cfg.link_delay_us = static_cast<TimeUs>(std::llround(value * 1000.0));
  } else {
    throw std::invalid_argument("unknown sweep parameter: " + parameter);
  }
}

ComparisonTable run_sweep(const SweepSpec& spec) {
  if (spec.values.empty() || spec.seeds < 1) {
    throw std::invalid_argument("sweep needs at least one value and one seed");
  }

  struct Task {
    std::size_t value_index;
    int seed_index;
  };
  std::vector<Task> tasks;
  for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
    for (int si = 0; si < spec.seeds; ++si) {
      tasks.push_back({vi, si});
    }
  }
  std::vector<PairResult> results(tasks.size());
  std::vector<std::string> errors(tasks.size());

  auto run_task = [&](std::size_t t) {
    const Task& task = tasks[t];
    ScenarioConfig cfg = spec.base;
    apply_parameter(cfg, spec.parameter, spec.values[task.value_index]);
    cfg.seed = spec.base.seed + static_cast<std::uint64_t>(task.seed_index);
    try {
      // One generated world per (value, seed); both protocols consume it.
      Scenario scn = build_scenario(cfg);
      ScenarioConfig gram_cfg = cfg;
      gram_cfg.protocol = "gram";
      RunReport gram_report = sim::run_with_scenario(gram_cfg, scn);
      ScenarioConfig ndn_cfg = cfg;
      ndn_cfg.protocol = "ndn";
      RunReport ndn_report = sim::run_with_scenario(ndn_cfg, scn);
      if (gram_report.topology_text != ndn_report.topology_text) {
        throw std::logic_error("paired runs diverged on topology");
      }
      results[t].gram = summarize(gram_report);
      results[t].ndn = summarize(ndn_report);
    } catch (const std::exception& ex) {
      errors[t] = "sweep point value=" +
                  format_double(spec.values[task.value_index]) +
                  " seed=" + std::to_string(cfg.seed) + ": " + ex.what();
    }
  };

  unsigned jobs = spec.jobs > 0 ? static_cast<unsigned>(spec.jobs)
                                : std::thread::hardware_concurrency();
  jobs = std::max(1u, std::min<unsigned>(jobs, tasks.size()));
  if (jobs == 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      run_task(t);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t t = next.fetch_add(1); t < tasks.size();
             t = next.fetch_add(1)) {
          run_task(t);
        }
      });
    }
    for (auto& th : workers) {
      th.join();
    }
  }
  for (const std::string& err : errors) {
    if (!err.empty()) {
      throw std::runtime_error(err);
    }
  }

  ComparisonTable table;
  table.parameter = spec.parameter;
  for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
    std::vector<double> gram_table_means, ndn_table_means;
    std::vector<double> gram_delay_means, ndn_delay_means;
    std::vector<std::uint64_t> gram_table_max, ndn_table_max;
    for (int si = 0; si < spec.seeds; ++si) {
      const PairResult& r = results[vi * spec.seeds + si];
      gram_table_means.push_back(r.gram.table_mean);
      ndn_table_means.push_back(r.ndn.table_mean);
      gram_delay_means.push_back(r.gram.delay_mean_ms);
      ndn_delay_means.push_back(r.ndn.delay_mean_ms);
      gram_table_max.push_back(r.gram.table_max);
      ndn_table_max.push_back(r.ndn.table_max);
    }
    ComparisonRow row;
    row.value = spec.values[vi];
    row.seeds = spec.seeds;
    row.gram_table = aggregate(gram_table_means, gram_table_max);
    row.ndn_table = aggregate(ndn_table_means, ndn_table_max);
    row.gram_delay_ms = aggregate(gram_delay_means, {});
    row.ndn_delay_ms = aggregate(ndn_delay_means, {});

    ScenarioConfig cfg = spec.base;
    apply_parameter(cfg, spec.parameter, row.value);
    if (row.gram_table.max > static_cast<std::uint64_t>(cfg.groups)) {
      throw std::runtime_error("gram table exceeded the group count at value " +
                               format_double(row.value));
    }
    table.rows.push_back(row);
  }
  return table;
}

std::string ComparisonTable::to_csv() const {
  std::string out =
      "parameter,value,seeds,gram_table_mean,gram_table_ci95,gram_table_max,"
      "ndn_table_mean,ndn_table_ci95,ndn_table_max,gram_delay_mean_ms,"
      "gram_delay_ci95,ndn_delay_mean_ms,ndn_delay_ci95\n";
  for (const ComparisonRow& r : rows) {
    out += parameter;
    out += ',' + format_double(r.value);
    out += ',' + std::to_string(r.seeds);
    out += ',' + format_double(r.gram_table.mean);
    out += ',' + format_double(r.gram_table.ci95);
    out += ',' + std::to_string(r.gram_table.max);
    out += ',' + format_double(r.ndn_table.mean);
    out += ',' + format_double(r.ndn_table.ci95);
    out += ',' + std::to_string(r.ndn_table.max);
    out += ',' + format_double(r.gram_delay_ms.mean);
    out += ',' + format_double(r.gram_delay_ms.ci95);
    out += ',' + format_double(r.ndn_delay_ms.mean);
    out += ',' + format_double(r.ndn_delay_ms.ci95);
    out += '\n';
  }
  return out;
}

} // namespace ccngram::metrics
