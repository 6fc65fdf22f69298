/* C interface to the ccngram multicast simulator.
 *
 * All functions are thread-compatible: distinct handles may be used from
 * distinct threads, a single handle must not be shared without external
 * synchronization. Functions returning int use the CCN_* codes below;
 * functions returning pointers yield NULL on failure. ccn_last_error()
 * describes the most recent failure on the calling thread. Strings returned
 * from accessor functions stay valid until the handle they came from is
 * destroyed.
 */

#ifndef CCNGRAM_CCNGRAM_H
#define CCNGRAM_CCNGRAM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  CCN_OK = 0,
  CCN_ERR_INVALID = 1, /* bad argument or config value */
  CCN_ERR_IO = 2,      /* file could not be read or written */
  CCN_ERR_RUN = 3      /* simulation failed or invariant violated */
};

typedef struct ccn_config ccn_config;
typedef struct ccn_report ccn_report;
typedef struct ccn_sweep ccn_sweep;

const char* ccn_version(void);
const char* ccn_last_error(void);

/* --- scenario configuration ------------------------------------------- */

/* Starts from the built-in defaults (the 200-node desk-scale scenario). */
ccn_config* ccn_config_create(void);
void ccn_config_destroy(ccn_config* cfg);
ccn_config* ccn_config_clone(const ccn_config* cfg);

/* Keys match the plain-text config format: protocol, nodes, side_m,
 * radius_m, link_delay_ms, consumer_link_delay_ms, groups, group_size,
 * rate_per_s, cache_capacity, duration_s, sample_period_ms, warmup_s,
 * mart_timeout_s, gc_period_s, pit_lifetime_s, join_window_ms, seed,
 * trace, topology_retries. */
int ccn_config_set(ccn_config* cfg, const char* key, const char* value);

/* Loads "key=value" lines ('#' comments) on top of the current values. */
int ccn_config_load_file(ccn_config* cfg, const char* path);

/* --- running one scenario ---------------------------------------------- */

ccn_report* ccn_run(const ccn_config* cfg);
void ccn_report_destroy(ccn_report* report);

/* Post-warm-up aggregates. Known names: table_mean, table_max,
 * delay_mean_ms, delay_p95_ms, delay_samples, consumer_failures,
 * rounds_total, topology_seed, tx_MI, tx_MP, tx_MR, tx_NI, tx_ND, tx_NN. */
int ccn_report_stat(const ccn_report* report, const char* name, double* out);

/* Empty string when tracing was disabled. */
const char* ccn_report_trace(const ccn_report* report);
const char* ccn_report_topology(const ccn_report* report);
const char* ccn_report_summary_csv(const ccn_report* report);

/* Writes tables.csv, delays.csv, summary.csv (and trace.log when tracing)
 * into an existing directory. */
int ccn_report_write_csv(const ccn_report* report, const char* dir);

/* --- parameter sweeps --------------------------------------------------- */

/* parameter: rate | group_count | group_size | link_delay (ms).
 * values_csv: comma-separated list, e.g. "50,100,200,400,800".
 * Each sweep point runs gram and ndn on the identical generated world;
 * seeds replicates every point. jobs <= 0 uses all hardware threads. */
ccn_sweep* ccn_sweep_create(const ccn_config* base, const char* parameter,
                            const char* values_csv, int seeds, int jobs);
void ccn_sweep_destroy(ccn_sweep* sweep);
int ccn_sweep_run(ccn_sweep* sweep);

/* Comparison table of the finished sweep. */
const char* ccn_sweep_csv(const ccn_sweep* sweep);
int ccn_sweep_row_count(const ccn_sweep* sweep);

/* Columns: value, gram_table_mean, gram_table_max, ndn_table_mean,
 * ndn_table_max, gram_delay_mean_ms, ndn_delay_mean_ms, and the _ci95
 * variants of the means. */
int ccn_sweep_cell(const ccn_sweep* sweep, int row, const char* column,
                   double* out);

/* --- pinned oracle scenarios ------------------------------------------- */

int ccn_oracle_count(void);
const char* ccn_oracle_name(int index);

/* Runs the named oracle scenario with tracing enabled. */
ccn_report* ccn_oracle_run(const char* name);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CCNGRAM_CCNGRAM_H */
