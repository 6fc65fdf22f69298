// Command-line front end for the ccngram simulator shared library.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccngram/ccngram.h"

namespace fs = std::filesystem;

namespace {

struct ConfigHandle {
  ccn_config* ptr;
  ~ConfigHandle() { ccn_config_destroy(ptr); }
};

struct ReportHandle {
  ccn_report* ptr;
  ~ReportHandle() { ccn_report_destroy(ptr); }
};

struct SweepHandle {
  ccn_sweep* ptr;
  ~SweepHandle() { ccn_sweep_destroy(ptr); }
};

[[noreturn]] void fail(const std::string& context) {
  std::cerr << "error: " << context << ": " << ccn_last_error() << "\n";
  std::exit(1);
}

void apply_option(ccn_config* cfg, const std::string& key,
                  const std::string& value) {
  if (ccn_config_set(cfg, key.c_str(), value.c_str()) != CCN_OK) {
    fail("--" + key + " " + value);
  }
}

// Shared scenario flags; every ScenarioConfig key is also reachable through
// --set key=value.
struct CommonOpts {
  std::string config_file;
  std::vector<std::string> sets;
  std::vector<std::pair<std::string, std::string>> flags;

  void add_to(CLI::App* app) {
    app->add_option("--config", config_file,
                    "plain-text key=value config file");
    app->add_option("--set", sets, "override any config key (key=value)")
        ->take_all();
    static const char* keys[] = {
        "protocol",     "nodes",           "side_m",
        "radius_m",     "link_delay_ms",   "consumer_link_delay_ms",
        "groups",       "group_size",      "rate_per_s",
        "cache_capacity", "duration_s",    "sample_period_ms",
        "warmup_s",     "mart_timeout_s",  "gc_period_s",
        "pit_lifetime_s", "join_window_ms", "seed",
        "trace",        "topology_retries"};
    for (const char* key : keys) {
      app->add_option_function<std::string>(
          std::string("--") + key,
          [this, key](const std::string& v) { flags.emplace_back(key, v); },
          std::string("config key ") + key);
    }
  }

  ConfigHandle build() const {
    ConfigHandle cfg{ccn_config_create()};
    if (!config_file.empty() &&
        ccn_config_load_file(cfg.ptr, config_file.c_str()) != CCN_OK) {
      fail("loading " + config_file);
    }
    for (const auto& [key, value] : flags) {
      apply_option(cfg.ptr, key, value);
    }
    for (const std::string& kv : sets) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: --set expects key=value, got " << kv << "\n";
        std::exit(1);
      }
      apply_option(cfg.ptr, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
  }
};

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    std::exit(1);
  }
  out << content;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return {};
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_report_summary(const ccn_report* report) {
  static const char* stats[] = {"table_mean",      "table_max",
                                "delay_mean_ms",   "delay_p95_ms",
                                "delay_samples",   "consumer_failures",
                                "rounds_total",    "topology_seed"};
  for (const char* name : stats) {
    double v = 0;
    if (ccn_report_stat(report, name, &v) == CCN_OK) {
      std::printf("%-18s %.6g\n", name, v);
    }
  }
}

int cmd_run(const CommonOpts& opts, const std::string& outdir,
            bool dump_topology) {
  ConfigHandle cfg = opts.build();
  ReportHandle report{ccn_run(cfg.ptr)};
  if (!report.ptr) {
    fail("run");
  }
  fs::create_directories(outdir);
  if (ccn_report_write_csv(report.ptr, outdir.c_str()) != CCN_OK) {
    fail("writing CSV files to " + outdir);
  }
  if (dump_topology) {
    write_text(fs::path(outdir) / "topology.txt",
               ccn_report_topology(report.ptr));
  }
  print_report_summary(report.ptr);
  std::printf("wrote %s/{tables,delays,summary}.csv\n", outdir.c_str());
  return 0;
}

SweepHandle run_one_sweep(const ccn_config* base, const std::string& param,
                          const std::string& values, int seeds, int jobs) {
  SweepHandle sweep{ccn_sweep_create(base, param.c_str(), values.c_str(),
                                     seeds, jobs)};
  if (!sweep.ptr) {
    fail("sweep setup (" + param + ")");
  }
  if (ccn_sweep_run(sweep.ptr) != CCN_OK) {
    fail("sweep (" + param + ")");
  }
  return sweep;
}

int cmd_sweep(const CommonOpts& opts, const std::string& figure,
              const std::string& param, const std::string& values, int seeds,
              int jobs, const std::string& outdir) {
  ConfigHandle base = opts.build();
  fs::create_directories(outdir);

  if (figure.empty()) {
    if (param.empty() || values.empty()) {
      std::cerr << "error: need --figure or both --param and --values\n";
      return 1;
    }
    SweepHandle sweep = run_one_sweep(base.ptr, param, values, seeds, jobs);
    write_text(fs::path(outdir) / "comparison.csv", ccn_sweep_csv(sweep.ptr));
    std::fputs(ccn_sweep_csv(sweep.ptr), stdout);
    std::printf("wrote %s/comparison.csv\n", outdir.c_str());
    return 0;
  }

  // Figure presets mirror the reference experiments: rate and link-delay
  // effects on table sizes, table sizes vs group count and size, and
  // end-to-end delay vs group count.
  if (figure == "rate") {
    SweepHandle s15 =
        run_one_sweep(base.ptr, "rate", "50,100,200,400,800", seeds, jobs);
    ConfigHandle base30{ccn_config_clone(base.ptr)};
    apply_option(base30.ptr, "link_delay_ms", "30");
    SweepHandle s30 =
        run_one_sweep(base30.ptr, "rate", "50,100,200,400,800", seeds, jobs);
    write_text(fs::path(outdir) / "fig_rate.csv", ccn_sweep_csv(s15.ptr));
    write_text(fs::path(outdir) / "fig_rate_30ms.csv", ccn_sweep_csv(s30.ptr));
    write_text(fs::path(outdir) / "comparison.csv", ccn_sweep_csv(s15.ptr));
    std::printf("wrote %s/fig_rate.csv and %s/fig_rate_30ms.csv\n",
                outdir.c_str(), outdir.c_str());
    return 0;
  }

  std::string sweep_param, sweep_values, file;
  if (figure == "groups") {
    sweep_param = "group_count";
    sweep_values = "5,10,15,20,25,30";
    file = "fig_groups.csv";
  } else if (figure == "size") {
    sweep_param = "group_size";
    sweep_values = "10,20,30,40";
    file = "fig_size.csv";
  } else if (figure == "delay") {
    sweep_param = "group_count";
    sweep_values = "5,10,15,20,25,30";
    file = "fig_delay.csv";
  } else {
    std::cerr << "error: unknown figure " << figure
              << " (rate|groups|size|delay)\n";
    return 1;
  }
  SweepHandle sweep =
      run_one_sweep(base.ptr, sweep_param, sweep_values, seeds, jobs);
  write_text(fs::path(outdir) / file, ccn_sweep_csv(sweep.ptr));
  write_text(fs::path(outdir) / "comparison.csv", ccn_sweep_csv(sweep.ptr));
  std::fputs(ccn_sweep_csv(sweep.ptr), stdout);
  std::printf("wrote %s/%s\n", outdir.c_str(), file.c_str());
  return 0;
}

int cmd_oracle(const std::string& golden_dir, bool update,
               std::vector<std::string> names) {
  if (names.empty()) {
    for (int i = 0; i < ccn_oracle_count(); ++i) {
      names.push_back(ccn_oracle_name(i));
    }
  }
  int failures = 0;
  for (const std::string& name : names) {
    ReportHandle report{ccn_oracle_run(name.c_str())};
    if (!report.ptr) {
      fail("oracle " + name);
    }
    const fs::path golden = fs::path(golden_dir) / (name + ".trace");
    const std::string trace = ccn_report_trace(report.ptr);
    if (update) {
      fs::create_directories(golden_dir);
      write_text(golden, trace);
      std::printf("updated %s\n", golden.c_str());
      continue;
    }
    const std::string expected = read_text(golden);
    if (expected.empty()) {
      std::printf("FAIL %-14s missing golden file %s\n", name.c_str(),
                  golden.c_str());
      ++failures;
    } else if (expected != trace) {
      std::printf("FAIL %-14s trace differs from %s\n", name.c_str(),
                  golden.c_str());
      ++failures;
    } else {
      std::printf("PASS %-14s trace matches %s\n", name.c_str(),
                  golden.c_str());
    }
  }
  return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gram-mcast: multicast forwarding simulator (per-group CCN-GRAM "
      "state vs per-Interest NDN state)"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  std::string run_outdir = "out";
  bool dump_topology = false;
  CLI::App* run = app.add_subcommand("run", "run one scenario");
  run_opts.add_to(run);
  run->add_option("--outdir", run_outdir, "output directory");
  run->add_flag("--dump-topology", dump_topology,
                "also write topology.txt in the output directory");

  CommonOpts sweep_opts;
  std::string figure, param, values, sweep_outdir = "out";
  int seeds = 5, jobs = 0;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "paired gram/ndn runs over a swept parameter");
  sweep_opts.add_to(sweep);
  sweep->add_option("--figure", figure,
                    "preset sweep: rate | groups | size | delay");
  sweep->add_option("--param", param,
                    "rate | group_count | group_size | link_delay");
  sweep->add_option("--values", values, "comma-separated value list");
  sweep->add_option("--seeds", seeds, "replications per point");
  sweep->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  sweep->add_option("--outdir", sweep_outdir, "output directory");

  std::string golden_dir = "data/golden";
  bool update = false;
  std::vector<std::string> oracle_names;
  CLI::App* oracle =
      app.add_subcommand("oracle", "run golden-trace oracle scenarios");
  oracle->add_option("--golden-dir", golden_dir, "golden trace directory");
  oracle->add_flag("--update", update, "rewrite golden files");
  oracle->add_option("--name", oracle_names, "oracle scenario name(s)")
      ->take_all();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return cmd_run(run_opts, run_outdir, dump_topology);
  }
  if (sweep->parsed()) {
    return cmd_sweep(sweep_opts, figure, param, values, seeds, jobs,
                     sweep_outdir);
  }
  if (oracle->parsed()) {
    return cmd_oracle(golden_dir, update, oracle_names);
  }
  return 1;
}
