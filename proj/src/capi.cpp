// SPDX-License-Identifier: Apache-2.0
#include "spinmem/spinmem.h"

#include <cstring>
#include <filesystem>
#include <string>

#include "config.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "montecarlo.hpp"
#include "network.hpp"
#include "patterns.hpp"
#include "serialize.hpp"

using namespace spinmem;

extern "C" {

struct snm_config {
  RunConfig rep;
};
struct snm_patterns {
  PatternSet rep;
};
struct snm_weights {
  WeightMatrix rep;
};
struct snm_network {
  HardwareNetwork rep;
};
struct snm_sweep_report {
  SweepReport rep;
};
struct snm_mc_report {
  McReport rep;
  int threads = 0;
};

}  // extern "C"

namespace {

thread_local std::string g_last_error;

snm_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
      return SNM_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse:
      return SNM_ERR_PARSE;
    case ErrorCode::format:
      return SNM_ERR_FORMAT;
    case ErrorCode::config:
      return SNM_ERR_CONFIG;
    case ErrorCode::dimension:
      return SNM_ERR_DIMENSION;
    case ErrorCode::disconnected_neuron:
      return SNM_ERR_DISCONNECTED;
    case ErrorCode::io:
      return SNM_ERR_IO;
  }
  return SNM_ERR_INTERNAL;
}

template <typename Fn>
snm_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return SNM_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SNM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SNM_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::invalid_argument, what);
}

Pattern pattern_from_buffer(const int8_t* input, int n) {
  require(input != nullptr, "input buffer is null");
  require(n > 0, "pattern length must be positive");
  Pattern p;
  p.values.assign(input, input + n);
  validate_pattern(p);
  return p;
}

void copy_pattern(const Pattern& p, int8_t* out) {
  std::memcpy(out, p.values.data(), p.values.size());
}

snm_utest to_c_utest(const UTestResult& r) {
  snm_utest out{};
  out.u_statistic = r.u_statistic;
  out.p_value = r.p_value;
  out.exact = r.exact ? 1 : 0;
  out.degenerate = r.degenerate ? 1 : 0;
  out.n_first = static_cast<int32_t>(r.n_first);
  out.n_second = static_cast<int32_t>(r.n_second);
  return out;
}

std::string join_path(const char* dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace

extern "C" {

const char* snm_version(void) { return "1.0.0"; }

const char* snm_last_error(void) { return g_last_error.c_str(); }

/* ---- config ---- */

snm_status snm_config_create(snm_config** out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    *out = new snm_config{RunConfig{}};
  });
}

snm_status snm_config_load(const char* path, snm_config** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new snm_config{RunConfig::from_json_file(path)};
  });
}

snm_status snm_config_set_seed(snm_config* cfg, uint64_t seed) {
  return guarded([&] {
    require(cfg != nullptr, "config is null");
    cfg->rep.seed = seed;
  });
}

snm_status snm_config_set_threads(snm_config* cfg, int threads) {
  return guarded([&] {
    require(cfg != nullptr, "config is null");
    require(threads >= 0, "threads must be >= 0");
    cfg->rep.threads = threads;
  });
}

snm_status snm_config_set_out_dir(snm_config* cfg, const char* dir) {
  return guarded([&] {
    require(cfg != nullptr && dir != nullptr, "null argument");
    cfg->rep.out_dir = dir;
  });
}

snm_status snm_config_set_patterns_file(snm_config* cfg, const char* path) {
  return guarded([&] {
    require(cfg != nullptr && path != nullptr, "null argument");
    cfg->rep.patterns_file = path;
    cfg->rep.idx_images.clear();
  });
}

snm_status snm_config_set_implementations(snm_config* cfg, int software,
                                          int hardware) {
  return guarded([&] {
    require(cfg != nullptr, "config is null");
    require(software != 0 || hardware != 0,
            "at least one implementation required");
    cfg->rep.sweep_software = software != 0;
    cfg->rep.sweep_hardware = hardware != 0;
  });
}

uint64_t snm_config_seed(const snm_config* cfg) {
  return cfg ? cfg->rep.seed : 0;
}

int snm_config_threads(const snm_config* cfg) {
  return cfg ? cfg->rep.threads : 0;
}

const char* snm_config_out_dir(const snm_config* cfg) {
  return cfg ? cfg->rep.out_dir.c_str() : "";
}

void snm_config_free(snm_config* cfg) { delete cfg; }

/* ---- patterns ---- */

snm_status snm_patterns_open(const snm_config* cfg, snm_patterns** out) {
  return guarded([&] {
    require(cfg != nullptr && out != nullptr, "null argument");
    *out = new snm_patterns{cfg->rep.load_pattern_set()};
  });
}

snm_status snm_patterns_load_text(const char* path, snm_patterns** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new snm_patterns{load_patterns(path)};
  });
}

snm_status snm_patterns_load_idx(const char* path, int binarize_threshold,
                                 snm_patterns** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new snm_patterns{load_idx_images(path, binarize_threshold)};
  });
}

int snm_patterns_count(const snm_patterns* set) {
  return set ? static_cast<int>(set->rep.patterns.size()) : 0;
}

int snm_patterns_rows(const snm_patterns* set) {
  return set ? set->rep.rows : 0;
}

int snm_patterns_cols(const snm_patterns* set) {
  return set ? set->rep.cols : 0;
}

snm_status snm_patterns_get(const snm_patterns* set, int index, int8_t* out) {
  return guarded([&] {
    require(set != nullptr && out != nullptr, "null argument");
    require(index >= 0 && index < static_cast<int>(set->rep.patterns.size()),
            "pattern index out of range");
    copy_pattern(set->rep.patterns[index], out);
  });
}

void snm_patterns_free(snm_patterns* set) { delete set; }

/* ---- weights ---- */

snm_status snm_train(const snm_patterns* set, const snm_config* cfg,
                     snm_weights** out) {
  return guarded([&] {
    require(set != nullptr && cfg != nullptr && out != nullptr,
            "null argument");
    *out = new snm_weights{
        train(set->rep.patterns, cfg->rep.zero_diagonal)};
  });
}

snm_status snm_weights_save(const snm_weights* weights, const char* path) {
  return guarded([&] {
    require(weights != nullptr && path != nullptr, "null argument");
    write_text_file(path, weights_to_csv(weights->rep));
  });
}

snm_status snm_weights_load(const char* path, snm_weights** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new snm_weights{weights_from_csv(read_text_file(path), path)};
  });
}

int snm_weights_dim(const snm_weights* weights) {
  return weights ? weights->rep.n : 0;
}

snm_status snm_weights_get(const snm_weights* weights, int i, int j,
                           int32_t* out) {
  return guarded([&] {
    require(weights != nullptr && out != nullptr, "null argument");
    require(i >= 0 && i < weights->rep.n && j >= 0 && j < weights->rep.n,
            "weight index out of range");
    *out = weights->rep.at(i, j);
  });
}

void snm_weights_free(snm_weights* weights) { delete weights; }

/* ---- network ---- */

snm_status snm_program(const snm_weights* weights, const snm_config* cfg,
                       snm_network** out) {
  return guarded([&] {
    require(weights != nullptr && cfg != nullptr && out != nullptr,
            "null argument");
    *out = new snm_network{
        quantize(weights->rep, cfg->rep.hardware_options())};
  });
}

snm_status snm_network_dump(const snm_network* net, const char* path) {
  return guarded([&] {
    require(net != nullptr && path != nullptr, "null argument");
    write_text_file(path, network_to_csv(net->rep));
  });
}

int snm_network_dim(const snm_network* net) { return net ? net->rep.n() : 0; }

void snm_network_free(snm_network* net) { delete net; }

/* ---- recalls ---- */

snm_status snm_recall_software(const snm_weights* weights,
                               const snm_config* cfg, const int8_t* input,
                               int n, int max_iters, int8_t* final_out,
                               snm_recall_stats* stats) {
  return guarded([&] {
    require(weights != nullptr && cfg != nullptr && final_out != nullptr &&
                stats != nullptr,
            "null argument");
    const Pattern y0 = pattern_from_buffer(input, n);
    const RecallResult r =
        recall_software(weights->rep, y0, max_iters, cfg->rep.neuron.v_ref);
    copy_pattern(r.final, final_out);
    *stats = snm_recall_stats{r.iterations, r.converged ? 1 : 0,
                              r.two_cycle ? 1 : 0};
  });
}

snm_status snm_recall_hardware(const snm_network* net, const int8_t* input,
                               int n, int max_iters, int8_t* final_out,
                               snm_recall_stats* stats) {
  return guarded([&] {
    require(net != nullptr && final_out != nullptr && stats != nullptr,
            "null argument");
    const Pattern y0 = pattern_from_buffer(input, n);
    const RecallResult r = recall_hardware(net->rep, y0, max_iters);
    copy_pattern(r.final, final_out);
    *stats = snm_recall_stats{r.iterations, r.converged ? 1 : 0,
                              r.two_cycle ? 1 : 0};
  });
}

snm_status snm_inject_noise(const int8_t* input, int n, double rate,
                            uint64_t seed, int8_t* out) {
  return guarded([&] {
    require(out != nullptr, "out is null");
    const Pattern p = pattern_from_buffer(input, n);
    RandomEngine rng = make_engine(substream(seed, 0x6E6Fu /* "no" */));
    copy_pattern(inject_noise(p, rate, rng), out);
  });
}

/* ---- sweep ---- */

snm_status snm_sweep_run(const snm_config* cfg, const snm_patterns* set,
                         snm_sweep_report** out) {
  return guarded([&] {
    require(cfg != nullptr && set != nullptr && out != nullptr,
            "null argument");
    const SweepConfig sweep_cfg = cfg->rep.sweep_config(set->rep);
    *out = new snm_sweep_report{sweep(sweep_cfg, cfg->rep.threads)};
  });
}

snm_status snm_sweep_write_csv(const snm_sweep_report* report,
                               const char* out_dir) {
  return guarded([&] {
    require(report != nullptr && out_dir != nullptr, "null argument");
    write_text_file(join_path(out_dir, "sweep.csv"), sweep_csv(report->rep));
    if (report->rep.has_software && report->rep.has_hardware)
      write_text_file(join_path(out_dir, "delta_r.csv"),
                      delta_r_csv(report->rep));
  });
}

snm_status snm_sweep_compare(const snm_sweep_report* report, double window_lo,
                             double window_hi, snm_utest* out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null argument");
    *out = to_c_utest(
        compare_implementations(report->rep, window_lo, window_hi));
  });
}

snm_status snm_utest_write_json(const snm_utest* result, const char* path) {
  return guarded([&] {
    require(result != nullptr && path != nullptr, "null argument");
    UTestResult r;
    r.u_statistic = result->u_statistic;
    r.p_value = result->p_value;
    r.exact = result->exact != 0;
    r.degenerate = result->degenerate != 0;
    r.n_first = static_cast<size_t>(result->n_first);
    r.n_second = static_cast<size_t>(result->n_second);
    write_text_file(path, comparison_json(r));
  });
}

void snm_sweep_report_free(snm_sweep_report* report) { delete report; }

/* ---- Monte Carlo ---- */

snm_status snm_mc_run(const snm_config* cfg, snm_mc_report** out) {
  return guarded([&] {
    require(cfg != nullptr && out != nullptr, "null argument");
    *out = new snm_mc_report{
        run_weight_mc(cfg->rep.mc_config(), cfg->rep.threads),
        cfg->rep.threads};
  });
}

snm_status snm_mc_write_csv(const snm_mc_report* report, const char* out_dir) {
  return guarded([&] {
    require(report != nullptr && out_dir != nullptr, "null argument");
    write_text_file(join_path(out_dir, "mc_samples.csv"),
                    mc_samples_csv(report->rep));
    write_text_file(join_path(out_dir, "mc_summary.csv"),
                    mc_summary_csv(report->rep));
  });
}

void snm_mc_report_free(snm_mc_report* report) { delete report; }

/* ---- Mann-Whitney ---- */

snm_status snm_mann_whitney(const double* first, int n_first,
                            const double* second, int n_second, int method,
                            snm_utest* out) {
  return guarded([&] {
    require(first != nullptr && second != nullptr && out != nullptr,
            "null argument");
    require(n_first > 0 && n_second > 0, "samples must be non-empty");
    require(method >= 0 && method <= 2, "method must be 0, 1, or 2");
    const MwuMethod m = method == 1   ? MwuMethod::exact
                        : method == 2 ? MwuMethod::normal_approximation
                                      : MwuMethod::automatic;
    *out = to_c_utest(mann_whitney_u(
        std::span<const double>(first, static_cast<size_t>(n_first)),
        std::span<const double>(second, static_cast<size_t>(n_second)),
        MwuAlternative::greater, m));
  });
}

}  // extern "C"
