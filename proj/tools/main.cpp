// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver for the spinmem simulator. Talks to the shared
// library exclusively through its C API.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinmem/spinmem.h"

namespace {

struct GlobalOptions {
  std::string config_path;
  std::string out_dir;       // overrides config out_dir when set
  uint64_t seed = 0;
  bool seed_set = false;
  int threads = -1;          // -1 = keep config value
};

using ConfigHandle = std::unique_ptr<snm_config, decltype(&snm_config_free)>;
using PatternsHandle =
    std::unique_ptr<snm_patterns, decltype(&snm_patterns_free)>;
using WeightsHandle = std::unique_ptr<snm_weights, decltype(&snm_weights_free)>;
using NetworkHandle = std::unique_ptr<snm_network, decltype(&snm_network_free)>;
using SweepHandle =
    std::unique_ptr<snm_sweep_report, decltype(&snm_sweep_report_free)>;
using McHandle = std::unique_ptr<snm_mc_report, decltype(&snm_mc_report_free)>;

[[noreturn]] void die(const char* context) {
  std::fprintf(stderr, "spinmem: %s: %s\n", context, snm_last_error());
  std::exit(1);
}

void check(snm_status status, const char* context) {
  if (status != SNM_OK) die(context);
}

ConfigHandle open_config(const GlobalOptions& opts) {
  snm_config* cfg = nullptr;
  if (opts.config_path.empty()) {
    check(snm_config_create(&cfg), "default config");
  } else {
    check(snm_config_load(opts.config_path.c_str(), &cfg), "loading config");
  }
  ConfigHandle handle(cfg, &snm_config_free);
  if (opts.seed_set) check(snm_config_set_seed(cfg, opts.seed), "setting seed");
  if (opts.threads >= 0)
    check(snm_config_set_threads(cfg, opts.threads), "setting threads");
  if (!opts.out_dir.empty())
    check(snm_config_set_out_dir(cfg, opts.out_dir.c_str()),
          "setting output directory");
  return handle;
}

PatternsHandle open_patterns(const snm_config* cfg,
                             const std::string& override_path) {
  snm_patterns* set = nullptr;
  if (!override_path.empty()) {
    check(snm_patterns_load_text(override_path.c_str(), &set),
          "loading patterns");
  } else {
    check(snm_patterns_open(cfg, &set), "loading patterns");
  }
  return PatternsHandle(set, &snm_patterns_free);
}

std::string path_in(const snm_config* cfg, const char* name) {
  std::string dir = snm_config_out_dir(cfg);
  if (dir.empty()) dir = ".";
  return dir + "/" + name;
}

void print_grid(const int8_t* values, int rows, int cols) {
  std::string line;
  for (int r = 0; r < rows; ++r) {
    line.clear();
    for (int c = 0; c < cols; ++c)
      line += values[r * cols + c] > 0 ? '#' : '.';
    std::printf("  %s\n", line.c_str());
  }
}

int cmd_train(const GlobalOptions& opts, const std::string& patterns_path) {
  ConfigHandle cfg = open_config(opts);
  PatternsHandle set = open_patterns(cfg.get(), patterns_path);
  snm_weights* weights = nullptr;
  check(snm_train(set.get(), cfg.get(), &weights), "training");
  WeightsHandle wh(weights, &snm_weights_free);
  const std::string path = path_in(cfg.get(), "weights.csv");
  check(snm_weights_save(weights, path.c_str()), "saving weights");
  std::printf("trained %d patterns, n=%d -> %s\n",
              snm_patterns_count(set.get()), snm_weights_dim(weights),
              path.c_str());
  return 0;
}

int cmd_program(const GlobalOptions& opts, const std::string& weights_path) {
  ConfigHandle cfg = open_config(opts);
  const std::string in_path =
      weights_path.empty() ? path_in(cfg.get(), "weights.csv") : weights_path;
  snm_weights* weights = nullptr;
  check(snm_weights_load(in_path.c_str(), &weights), "loading weights");
  WeightsHandle wh(weights, &snm_weights_free);
  snm_network* net = nullptr;
  check(snm_program(weights, cfg.get(), &net), "programming network");
  NetworkHandle nh(net, &snm_network_free);
  const std::string out_path = path_in(cfg.get(), "network.csv");
  check(snm_network_dump(net, out_path.c_str()), "dumping network");
  std::printf("programmed %dx%d synapse grid -> %s\n", snm_network_dim(net),
              snm_network_dim(net), out_path.c_str());
  return 0;
}

int cmd_recall(const GlobalOptions& opts, int pattern_index, double noise,
               const std::string& impl) {
  ConfigHandle cfg = open_config(opts);
  PatternsHandle set = open_patterns(cfg.get(), "");
  const int rows = snm_patterns_rows(set.get());
  const int cols = snm_patterns_cols(set.get());
  const int n = rows * cols;
  if (pattern_index < 0 || pattern_index >= snm_patterns_count(set.get())) {
    std::fprintf(stderr, "spinmem: pattern index %d out of range (0..%d)\n",
                 pattern_index, snm_patterns_count(set.get()) - 1);
    return 1;
  }

  std::vector<int8_t> target(n), noisy(n), recovered(n);
  check(snm_patterns_get(set.get(), pattern_index, target.data()),
        "reading pattern");
  check(snm_inject_noise(target.data(), n, noise,
                         snm_config_seed(cfg.get()), noisy.data()),
        "injecting noise");

  std::printf("pattern %d (%dx%d), noise rate %.2f (%d bits flipped)\n",
              pattern_index, rows, cols, noise,
              static_cast<int>(std::lround(noise * n)));
  std::printf("stored pattern:\n");
  print_grid(target.data(), rows, cols);
  std::printf("noisy input:\n");
  print_grid(noisy.data(), rows, cols);

  snm_weights* weights = nullptr;
  check(snm_train(set.get(), cfg.get(), &weights), "training");
  WeightsHandle wh(weights, &snm_weights_free);

  const int max_iters = 100;
  auto report = [&](const char* name, const snm_recall_stats& stats) {
    const bool match =
        std::equal(recovered.begin(), recovered.end(), target.begin());
    std::printf("%s: %s after %d iteration%s, exact match: %s\n", name,
                stats.converged ? "converged"
                                : (stats.two_cycle ? "two-cycle" : "cut off"),
                stats.iterations, stats.iterations == 1 ? "" : "s",
                match ? "yes" : "no");
    print_grid(recovered.data(), rows, cols);
  };

  if (impl == "software" || impl == "both") {
    snm_recall_stats stats{};
    check(snm_recall_software(weights, cfg.get(), noisy.data(), n, max_iters,
                              recovered.data(), &stats),
          "software recall");
    report("software", stats);
  }
  if (impl == "hardware" || impl == "both") {
    snm_network* net = nullptr;
    check(snm_program(weights, cfg.get(), &net), "programming network");
    NetworkHandle nh(net, &snm_network_free);
    snm_recall_stats stats{};
    check(snm_recall_hardware(net, noisy.data(), n, max_iters,
                              recovered.data(), &stats),
          "hardware recall");
    report("hardware", stats);
  }
  return 0;
}

int run_sweep(const GlobalOptions& opts, bool force_both, bool do_compare) {
  ConfigHandle cfg = open_config(opts);
  if (force_both)
    check(snm_config_set_implementations(cfg.get(), 1, 1),
          "selecting implementations");
  PatternsHandle set = open_patterns(cfg.get(), "");
  snm_sweep_report* report = nullptr;
  check(snm_sweep_run(cfg.get(), set.get(), &report), "running sweep");
  SweepHandle rh(report, &snm_sweep_report_free);
  const std::string dir = snm_config_out_dir(cfg.get());
  check(snm_sweep_write_csv(report, dir.c_str()), "writing sweep CSVs");
  std::printf("sweep complete: %s/sweep.csv\n", dir.c_str());

  if (do_compare) {
    snm_utest result{};
    check(snm_sweep_compare(report, 0.0, 1.0, &result), "comparing");
    const std::string json_path = path_in(cfg.get(), "comparison.json");
    check(snm_utest_write_json(&result, json_path.c_str()),
          "writing comparison");
    std::printf(
        "mann-whitney (software vs hardware, alternative: hardware greater): "
        "U=%.1f p=%.4f method=%s n=%d/%d -> %s\n",
        result.u_statistic, result.p_value,
        result.exact ? "exact" : "normal-approximation", result.n_first,
        result.n_second, json_path.c_str());
  }
  return 0;
}

int cmd_mc(const GlobalOptions& opts) {
  ConfigHandle cfg = open_config(opts);
  snm_mc_report* report = nullptr;
  check(snm_mc_run(cfg.get(), &report), "running Monte Carlo");
  McHandle rh(report, &snm_mc_report_free);
  const std::string dir = snm_config_out_dir(cfg.get());
  check(snm_mc_write_csv(report, dir.c_str()), "writing Monte Carlo CSVs");
  std::printf("monte carlo complete: %s/mc_samples.csv, %s/mc_summary.csv\n",
              dir.c_str(), dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinmem: MTJ-based Hopfield associative memory simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  app.add_option("--config", opts.config_path, "run configuration (JSON)");
  app.add_option("--out", opts.out_dir, "output directory (overrides config)");
  app.add_option("--seed", opts.seed, "random seed (overrides config)")
      ->each([&](const std::string&) { opts.seed_set = true; });
  app.add_option("--threads", opts.threads,
                 "worker threads, 0 = all cores (overrides config)");

  std::string patterns_path;
  auto* train = app.add_subcommand("train", "train weights from patterns");
  train->add_option("--patterns", patterns_path,
                    "pattern file (overrides config source)");

  std::string weights_path;
  auto* program =
      app.add_subcommand("program", "program the synapse grid from weights");
  program->add_option("--weights", weights_path,
                      "weight CSV (default: <out>/weights.csv)");

  int pattern_index = 0;
  double noise = 0.3;
  std::string impl = "both";
  auto* recall = app.add_subcommand("recall", "single noisy recall");
  recall->add_option("--pattern", pattern_index, "stored pattern index")
      ->required();
  recall->add_option("--noise", noise, "noise rate in [0,1]");
  recall->add_option("--impl", impl, "software | hardware | both")
      ->check(CLI::IsMember({"software", "hardware", "both"}));

  auto* sweep =
      app.add_subcommand("sweep", "recall-rate sweep over noise levels");
  auto* mc = app.add_subcommand(
      "mc", "process-variation Monte Carlo of synapse output");
  auto* compare = app.add_subcommand(
      "compare", "sweep both implementations and run the U test");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (train->parsed()) return cmd_train(opts, patterns_path);
  if (program->parsed()) return cmd_program(opts, weights_path);
  if (recall->parsed()) return cmd_recall(opts, pattern_index, noise, impl);
  if (sweep->parsed()) return run_sweep(opts, false, false);
  if (mc->parsed()) return cmd_mc(opts);
  if (compare->parsed()) return run_sweep(opts, true, true);
  return 0;
}
