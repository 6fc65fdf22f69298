#include "ccngram/ccngram.h"

#include <cstring>
#include <exception>
#include <optional>
#include <sstream>
#include <string>

#include "core/engine.hpp"
#include "core/oracle.hpp"
#include "core/report.hpp"
#include "core/scenario.hpp"
#include "core/sweep.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn> int guarded(int failure_code, Fn&& fn) {
  try {
    fn();
    return CCN_OK;
  } catch (const std::invalid_argument& ex) {
    set_error(ex.what());
    return CCN_ERR_INVALID;
  } catch (const std::exception& ex) {
    set_error(ex.what());
    return failure_code;
  }
}

} // namespace

struct ccn_config {
  ccngram::ScenarioConfig cfg;
};

struct ccn_report {
  ccngram::RunReport report;
  std::optional<ccngram::Summary> summary; // filled when the run had data
  std::string summary_text;
};

struct ccn_sweep {
  ccngram::metrics::SweepSpec spec;
  std::optional<ccngram::metrics::ComparisonTable> table;
  std::string csv;
};

extern "C" {

const char* ccn_version(void) { return "0.1.0"; }

const char* ccn_last_error(void) { return g_last_error.c_str(); }

ccn_config* ccn_config_create(void) { return new ccn_config{}; }

void ccn_config_destroy(ccn_config* cfg) { delete cfg; }

ccn_config* ccn_config_clone(const ccn_config* cfg) {
  if (!cfg) {
    set_error("null config");
    return nullptr;
  }
  return new ccn_config{cfg->cfg};
}

int ccn_config_set(ccn_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) {
    set_error("null argument");
    return CCN_ERR_INVALID;
  }
  return guarded(CCN_ERR_INVALID, [&] { cfg->cfg.set(key, value); });
}

int ccn_config_load_file(ccn_config* cfg, const char* path) {
  if (!cfg || !path) {
    set_error("null argument");
    return CCN_ERR_INVALID;
  }
  return guarded(CCN_ERR_IO, [&] {
    ccngram::ScenarioConfig loaded = ccngram::load_config_file(path);
    cfg->cfg = loaded;
  });
}

static ccn_report* finish_report(ccngram::RunReport&& rep) {
  auto* out = new ccn_report{};
  out->report = std::move(rep);
  try {
    out->summary = ccngram::summarize(out->report);
    out->summary_text = ccngram::summary_csv(out->report, *out->summary);
  } catch (const std::exception&) {
    // Degenerate runs (e.g. zero duration) have no post-warm-up data;
    // stats then report "no data" instead of failing the run.
  }
  return out;
}

ccn_report* ccn_run(const ccn_config* cfg) {
  if (!cfg) {
    set_error("null config");
    return nullptr;
  }
  try {
    return finish_report(ccngram::sim::run_scenario(cfg->cfg));
  } catch (const std::exception& ex) {
    set_error(ex.what());
    return nullptr;
  }
}

void ccn_report_destroy(ccn_report* report) { delete report; }

int ccn_report_stat(const ccn_report* report, const char* name, double* out) {
  if (!report || !name || !out) {
    set_error("null argument");
    return CCN_ERR_INVALID;
  }
  const std::string key = name;
  if (key == "topology_seed") {
    *out = static_cast<double>(report->report.topology_seed);
    return CCN_OK;
  }
  if (key.rfind("tx_", 0) == 0) {
    auto it = report->report.tx_counts.find(key.substr(3));
    *out = it == report->report.tx_counts.end()
               ? 0.0
               : static_cast<double>(it->second);
    return CCN_OK;
  }
  if (!report->summary) {
    set_error("no data: the run produced no post-warm-up samples");
    return CCN_ERR_RUN;
  }
  const ccngram::Summary& s = *report->summary;
  if (key == "table_mean") {
    *out = s.table_mean;
  } else if (key == "table_max") {
    *out = static_cast<double>(s.table_max);
  } else if (key == "delay_mean_ms") {
    *out = s.delay_mean_ms;
  } else if (key == "delay_p95_ms") {
    *out = s.delay_p95_ms;
  } else if (key == "delay_samples") {
    *out = static_cast<double>(s.delay_count);
  } else if (key == "consumer_failures") {
    *out = static_cast<double>(s.consumer_failures);
  } else if (key == "rounds_total") {
    *out = static_cast<double>(s.rounds_total);
  } else {
    set_error("unknown stat: " + key);
    return CCN_ERR_INVALID;
  }
  return CCN_OK;
}

const char* ccn_report_trace(const ccn_report* report) {
  return report ? report->report.trace.c_str() : "";
}

const char* ccn_report_topology(const ccn_report* report) {
  return report ? report->report.topology_text.c_str() : "";
}

const char* ccn_report_summary_csv(const ccn_report* report) {
  return report ? report->summary_text.c_str() : "";
}

int ccn_report_write_csv(const ccn_report* report, const char* dir) {
  if (!report || !dir) {
    set_error("null argument");
    return CCN_ERR_INVALID;
  }
  return guarded(CCN_ERR_IO,
                 [&] { ccngram::write_report_files(report->report, dir); });
}

ccn_sweep* ccn_sweep_create(const ccn_config* base, const char* parameter,
                            const char* values_csv, int seeds, int jobs) {
  if (!base || !parameter || !values_csv) {
    set_error("null argument");
    return nullptr;
  }
  try {
    ccngram::metrics::SweepSpec spec;
    spec.base = base->cfg;
    spec.parameter = parameter;
    spec.seeds = seeds;
    spec.jobs = jobs;
    std::stringstream in(values_csv);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (!item.empty()) {
        spec.values.push_back(std::stod(item));
      }
    }
    if (spec.values.empty()) {
      throw std::invalid_argument("empty value list");
    }
    // Validate the parameter name up front.
    ccngram::ScenarioConfig probe = spec.base;
    ccngram::metrics::apply_parameter(probe, spec.parameter, spec.values[0]);
    return new ccn_sweep{std::move(spec), std::nullopt, {}};
  } catch (const std::exception& ex) {
    set_error(ex.what());
    return nullptr;
  }
}

void ccn_sweep_destroy(ccn_sweep* sweep) { delete sweep; }

int ccn_sweep_run(ccn_sweep* sweep) {
  if (!sweep) {
    set_error("null sweep");
    return CCN_ERR_INVALID;
  }
  return guarded(CCN_ERR_RUN, [&] {
    sweep->table = ccngram::metrics::run_sweep(sweep->spec);
    sweep->csv = sweep->table->to_csv();
  });
}

const char* ccn_sweep_csv(const ccn_sweep* sweep) {
  return sweep && sweep->table ? sweep->csv.c_str() : "";
}

int ccn_sweep_row_count(const ccn_sweep* sweep) {
  return sweep && sweep->table ? static_cast<int>(sweep->table->rows.size())
                               : 0;
}

int ccn_sweep_cell(const ccn_sweep* sweep, int row, const char* column,
                   double* out) {
  if (!sweep || !column || !out || !sweep->table) {
    set_error("null argument or sweep not run");
    return CCN_ERR_INVALID;
  }
  if (row < 0 || row >= static_cast<int>(sweep->table->rows.size())) {
    set_error("row out of range");
    return CCN_ERR_INVALID;
  }
  const ccngram::metrics::ComparisonRow& r = sweep->table->rows[row];
  const std::string key = column;
  if (key == "value") {
    *out = r.value;
  } else if (key == "gram_table_mean") {
    *out = r.gram_table.mean;
  } else if (key == "gram_table_ci95") {
    *out = r.gram_table.ci95;
  } else if (key == "gram_table_max") {
    *out = static_cast<double>(r.gram_table.max);
  } else if (key == "ndn_table_mean") {
    *out = r.ndn_table.mean;
  } else if (key == "ndn_table_ci95") {
    *out = r.ndn_table.ci95;
  } else if (key == "ndn_table_max") {
    *out = static_cast<double>(r.ndn_table.max);
  } else if (key == "gram_delay_mean_ms") {
    *out = r.gram_delay_ms.mean;
  } else if (key == "gram_delay_ci95") {
    *out = r.gram_delay_ms.ci95;
  } else if (key == "ndn_delay_mean_ms") {
    *out = r.ndn_delay_ms.mean;
  } else if (key == "ndn_delay_ci95") {
    *out = r.ndn_delay_ms.ci95;
  } else {
    set_error("unknown column: " + key);
    return CCN_ERR_INVALID;
  }
  return CCN_OK;
}

int ccn_oracle_count(void) {
  return static_cast<int>(ccngram::oracle_names().size());
}

const char* ccn_oracle_name(int index) {
  static thread_local std::string name;
  auto names = ccngram::oracle_names();
  if (index < 0 || index >= static_cast<int>(names.size())) {
    set_error("oracle index out of range");
    return nullptr;
  }
  name = names[index];
  return name.c_str();
}

ccn_report* ccn_oracle_run(const char* name) {
  if (!name) {
    set_error("null name");
    return nullptr;
  }
  try {
    return finish_report(ccngram::run_oracle(name));
  } catch (const std::exception& ex) {
    set_error(ex.what());
    return nullptr;
  }
}

} // extern "C"
