/* SPDX-License-Identifier: Apache-2.0
 *
 * spinmem: behavioral simulator of an MTJ-based Hopfield associative memory.
 *
 * C API of the shared library. All functions return SNM_OK on success or an
 * snm_status error code; snm_last_error() returns a thread-local message for
 * the most recent failure on the calling thread. Objects are opaque handles
 * created by snm_*_create/load/run functions and released with the matching
 * snm_*_free (freeing NULL is a no-op).
 */
#ifndef SPINMEM_SPINMEM_H
#define SPINMEM_SPINMEM_H

#include <stdint.h>

#if defined(_WIN32)
#define SNM_API __declspec(dllexport)
#else
#define SNM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum snm_status {
  SNM_OK = 0,
  SNM_ERR_INVALID_ARGUMENT = 1,
  SNM_ERR_PARSE = 2,
  SNM_ERR_FORMAT = 3,
  SNM_ERR_CONFIG = 4,
  SNM_ERR_DIMENSION = 5,
  SNM_ERR_DISCONNECTED = 6,
  SNM_ERR_IO = 7,
  SNM_ERR_INTERNAL = 8
} snm_status;

typedef struct snm_config snm_config;
typedef struct snm_patterns snm_patterns;
typedef struct snm_weights snm_weights;
typedef struct snm_network snm_network;
typedef struct snm_sweep_report snm_sweep_report;
typedef struct snm_mc_report snm_mc_report;

SNM_API const char* snm_version(void);
SNM_API const char* snm_last_error(void);

/* ---- run configuration ---- */

SNM_API snm_status snm_config_create(snm_config** out);
SNM_API snm_status snm_config_load(const char* path, snm_config** out);
SNM_API snm_status snm_config_set_seed(snm_config* cfg, uint64_t seed);
SNM_API snm_status snm_config_set_threads(snm_config* cfg, int threads);
SNM_API snm_status snm_config_set_out_dir(snm_config* cfg, const char* dir);
SNM_API snm_status snm_config_set_patterns_file(snm_config* cfg,
                                                const char* path);
/* Select which implementations a sweep runs (at least one). */
SNM_API snm_status snm_config_set_implementations(snm_config* cfg,
                                                  int software, int hardware);
SNM_API uint64_t snm_config_seed(const snm_config* cfg);
SNM_API int snm_config_threads(const snm_config* cfg);
/* Pointer owned by cfg; valid until the next setter call or free. */
SNM_API const char* snm_config_out_dir(const snm_config* cfg);
SNM_API void snm_config_free(snm_config* cfg);

/* ---- patterns ---- */

/* Load from the source named in the config (text grid or IDX images). */
SNM_API snm_status snm_patterns_open(const snm_config* cfg, snm_patterns** out);
SNM_API snm_status snm_patterns_load_text(const char* path, snm_patterns** out);
SNM_API snm_status snm_patterns_load_idx(const char* path,
                                         int binarize_threshold,
                                         snm_patterns** out);
SNM_API int snm_patterns_count(const snm_patterns* set);
SNM_API int snm_patterns_rows(const snm_patterns* set);
SNM_API int snm_patterns_cols(const snm_patterns* set);
/* Copies pattern `index` (entries -1/+1) into out[0..rows*cols). */
SNM_API snm_status snm_patterns_get(const snm_patterns* set, int index,
                                    int8_t* out);
SNM_API void snm_patterns_free(snm_patterns* set);

/* ---- Hebbian training and weight files ---- */

SNM_API snm_status snm_train(const snm_patterns* set, const snm_config* cfg,
                             snm_weights** out);
SNM_API snm_status snm_weights_save(const snm_weights* weights,
                                    const char* path);
SNM_API snm_status snm_weights_load(const char* path, snm_weights** out);
SNM_API int snm_weights_dim(const snm_weights* weights);
SNM_API snm_status snm_weights_get(const snm_weights* weights, int i, int j,
                                   int32_t* out);
SNM_API void snm_weights_free(snm_weights* weights);

/* ---- hardware network ---- */

SNM_API snm_status snm_program(const snm_weights* weights,
                               const snm_config* cfg, snm_network** out);
SNM_API snm_status snm_network_dump(const snm_network* net, const char* path);
SNM_API int snm_network_dim(const snm_network* net);
SNM_API void snm_network_free(snm_network* net);

/* ---- single recalls ---- */

typedef struct snm_recall_stats {
  int32_t iterations;
  int32_t converged; /* 0/1 */
  int32_t two_cycle; /* 0/1 */
} snm_recall_stats;

SNM_API snm_status snm_recall_software(const snm_weights* weights,
                                       const snm_config* cfg,
                                       const int8_t* input, int n,
                                       int max_iters, int8_t* final_out,
                                       snm_recall_stats* stats);
SNM_API snm_status snm_recall_hardware(const snm_network* net,
                                       const int8_t* input, int n,
                                       int max_iters, int8_t* final_out,
                                       snm_recall_stats* stats);
/* Flip exactly round(rate*n) distinct positions, deterministically in seed. */
SNM_API snm_status snm_inject_noise(const int8_t* input, int n, double rate,
                                    uint64_t seed, int8_t* out);

/* ---- noise sweep and implementation comparison ---- */

typedef struct snm_utest {
  double u_statistic;
  double p_value;
  int32_t exact;      /* 1 = exact tail, 0 = normal approximation */
  int32_t degenerate; /* 1 = all values tied */
  int32_t n_first;
  int32_t n_second;
} snm_utest;

SNM_API snm_status snm_sweep_run(const snm_config* cfg,
                                 const snm_patterns* set,
                                 snm_sweep_report** out);
/* Writes sweep.csv (and delta_r.csv when both implementations ran). */
SNM_API snm_status snm_sweep_write_csv(const snm_sweep_report* report,
                                       const char* out_dir);
SNM_API snm_status snm_sweep_compare(const snm_sweep_report* report,
                                     double window_lo, double window_hi,
                                     snm_utest* out);
SNM_API snm_status snm_utest_write_json(const snm_utest* result,
                                        const char* path);
SNM_API void snm_sweep_report_free(snm_sweep_report* report);

/* ---- process-variation Monte Carlo ---- */

SNM_API snm_status snm_mc_run(const snm_config* cfg, snm_mc_report** out);
/* Writes mc_samples.csv and mc_summary.csv. */
SNM_API snm_status snm_mc_write_csv(const snm_mc_report* report,
                                    const char* out_dir);
SNM_API void snm_mc_report_free(snm_mc_report* report);

/* ---- standalone Mann-Whitney U ---- */

/* method: 0 = automatic, 1 = exact, 2 = normal approximation.
 * One-sided: alternative is "second sample greater". */
SNM_API snm_status snm_mann_whitney(const double* first, int n_first,
                                    const double* second, int n_second,
                                    int method, snm_utest* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPINMEM_SPINMEM_H */
