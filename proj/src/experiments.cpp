// SPDX-License-Identifier: Apache-2.0
#include "experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "error.hpp"
#include "parallel.hpp"

namespace spinmem {

namespace {

constexpr uint64_t kTrialStreamTag = 0x7472u;  // "tr"
constexpr uint64_t kSweepStreamTag = 0x7377u;  // "sw"

void append_formatted(std::string& out, const char* fmt, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, fmt, v);
  out += buf;
}

Pattern make_noisy(const Pattern& p, double rate, NoiseModel model,
                   RandomEngine& rng) {
  return model == NoiseModel::exact_count ? inject_noise(p, rate, rng)
                                          : inject_noise_bernoulli(p, rate, rng);
}

bool is_success(const RecallResult& result, const Pattern& target) {
  return result.converged && result.final == target;
}

}  // namespace

Pattern inject_noise(const Pattern& p, double rate, RandomEngine& rng) {
  validate_pattern(p);
  if (rate < 0.0 || rate > 1.0)
    fail(ErrorCode::invalid_argument, "noise rate must be in [0,1]");
  const int n = p.size();
  const int flips = static_cast<int>(std::lround(rate * n));
  Pattern noisy = p;
  // Partial Fisher-Yates: the first `flips` slots end up holding a uniform
  // sample of distinct positions.
  std::vector<int> index(n);
  std::iota(index.begin(), index.end(), 0);
  for (int i = 0; i < flips; ++i) {
    const int j =
        i + static_cast<int>(uniform_below(rng, static_cast<uint64_t>(n - i)));
    std::swap(index[i], index[j]);
    noisy.values[index[i]] = static_cast<int8_t>(-noisy.values[index[i]]);
  }
  return noisy;
}

Pattern inject_noise_bernoulli(const Pattern& p, double rate,
                               RandomEngine& rng) {
  validate_pattern(p);
  if (rate < 0.0 || rate > 1.0)
    fail(ErrorCode::invalid_argument, "noise rate must be in [0,1]");
  Pattern noisy = p;
  for (int8_t& v : noisy.values)
    if (uniform01(rng) < rate) v = static_cast<int8_t>(-v);
  return noisy;
}

namespace {

template <typename RecallFn>
double recall_rate_impl(RecallFn&& run_recall, const Pattern& target,
                        double rate, int trials, uint64_t seed,
                        NoiseModel noise) {
  if (trials < 1) fail(ErrorCode::invalid_argument, "trials must be >= 1");
  validate_pattern(target);
  int successes = 0;
  for (int t = 0; t < trials; ++t) {
    RandomEngine rng = make_engine(substream(seed, kTrialStreamTag, t));
    const Pattern noisy = make_noisy(target, rate, noise, rng);
    if (is_success(run_recall(noisy), target)) ++successes;
  }
  return static_cast<double>(successes) / trials;
}

}  // namespace

double recall_rate(const WeightMatrix& weights, const Pattern& target,
                   double rate, int trials, uint64_t seed, int max_iters,
                   double theta, NoiseModel noise) {
  return recall_rate_impl(
      [&](const Pattern& y0) {
        return recall_software(weights, y0, max_iters, theta);
      },
      target, rate, trials, seed, noise);
}

double recall_rate(const HardwareNetwork& net, const Pattern& target,
                   double rate, int trials, uint64_t seed, int max_iters,
                   NoiseModel noise) {
  return recall_rate_impl(
      [&](const Pattern& y0) { return recall_hardware(net, y0, max_iters); },
      target, rate, trials, seed, noise);
}

std::vector<double> SweepConfig::default_noise_rates() {
  std::vector<double> rates(21);
  for (int i = 0; i <= 20; ++i) rates[i] = static_cast<double>(i) / 20.0;
  return rates;
}

void SweepConfig::validate() const {
  if (patterns.empty())
    fail(ErrorCode::invalid_argument, "sweep needs at least one pattern");
  if (noise_rates.empty())
    fail(ErrorCode::invalid_argument, "sweep needs at least one noise rate");
  for (double r : noise_rates)
    if (!(r >= 0.0 && r <= 1.0))
      fail(ErrorCode::invalid_argument, "noise rates must be in [0,1]");
  if (trials_per_point < 1)
    fail(ErrorCode::invalid_argument, "trials_per_point must be >= 1");
  if (max_iters < 1)
    fail(ErrorCode::invalid_argument, "max_iters must be >= 1");
  if (!run_software && !run_hardware)
    fail(ErrorCode::config, "no implementation selected");
}

const SweepCell& SweepReport::cell(Implementation impl, int pattern,
                                   int rate_index) const {
  const auto& grid =
      impl == Implementation::software ? software : hardware;
  if (grid.empty())
    fail(ErrorCode::config, "implementation not present in report");
  return grid[static_cast<size_t>(pattern) * noise_rates.size() + rate_index];
}

std::vector<double> SweepReport::delta_r() const {
  if (!has_software || !has_hardware)
    fail(ErrorCode::config, "delta_r needs both implementations");
  std::vector<double> delta(software.size());
  for (size_t i = 0; i < delta.size(); ++i)
    delta[i] = hardware[i].recall_rate() - software[i].recall_rate();
  return delta;
}

SweepReport sweep(const SweepConfig& cfg, int threads) {
  cfg.validate();
  const WeightMatrix weights = train(cfg.patterns, cfg.zero_diagonal);
  std::optional<HardwareNetwork> net;
  if (cfg.run_hardware) net.emplace(quantize(weights, cfg.hardware));
  const double theta = cfg.hardware.neuron.v_ref;

  const int n_patterns = static_cast<int>(cfg.patterns.size());
  const int n_rates = static_cast<int>(cfg.noise_rates.size());
  const size_t cells = static_cast<size_t>(n_patterns) * n_rates;

  struct Tally {
    std::vector<std::atomic<int>> successes, converged, two_cycles;
    explicit Tally(size_t cells)
        : successes(cells), converged(cells), two_cycles(cells) {}
    void add(size_t cell, const RecallResult& r, bool success) {
      if (success) successes[cell].fetch_add(1, std::memory_order_relaxed);
      if (r.converged) converged[cell].fetch_add(1, std::memory_order_relaxed);
      if (r.two_cycle) two_cycles[cell].fetch_add(1, std::memory_order_relaxed);
    }
  };
  Tally sw_tally(cfg.run_software ? cells : 0);
  Tally hw_tally(cfg.run_hardware ? cells : 0);

  const int64_t jobs =
      static_cast<int64_t>(cells) * cfg.trials_per_point;
  parallel_for(jobs, threads, [&](int64_t job) {
    const int trial = static_cast<int>(job % cfg.trials_per_point);
    const size_t cell = static_cast<size_t>(job / cfg.trials_per_point);
    const int rate_index = static_cast<int>(cell % n_rates);
    const int pattern_index = static_cast<int>(cell / n_rates);
    const Pattern& target = cfg.patterns[pattern_index];
    const double rate = cfg.noise_rates[rate_index];

    // Noise derives only from (seed, pattern, rate, trial): both
    // implementations see the identical corrupted input.
    RandomEngine rng = make_engine(
        substream(cfg.seed, kSweepStreamTag, pattern_index, rate_index, trial));
    const Pattern noisy = make_noisy(target, rate, cfg.noise_model, rng);

    if (cfg.run_software) {
      const RecallResult r =
          recall_software(weights, noisy, cfg.max_iters, theta);
      sw_tally.add(cell, r, is_success(r, target));
    }
    if (cfg.run_hardware) {
      const RecallResult r = recall_hardware(*net, noisy, cfg.max_iters);
      hw_tally.add(cell, r, is_success(r, target));
    }
  });

  SweepReport report;
  report.noise_rates = cfg.noise_rates;
  report.n_patterns = n_patterns;
  report.has_software = cfg.run_software;
  report.has_hardware = cfg.run_hardware;
  auto collect = [&](const Tally& tally) {
    std::vector<SweepCell> grid(cells);
    for (size_t c = 0; c < cells; ++c) {
      SweepCell& out = grid[c];
      out.pattern_index = static_cast<int>(c / n_rates);
      out.noise_rate = cfg.noise_rates[c % n_rates];
      out.trials = cfg.trials_per_point;
      out.successes = tally.successes[c].load();
      out.converged = tally.converged[c].load();
      out.two_cycles = tally.two_cycles[c].load();
    }
    return grid;
  };
  if (cfg.run_software) report.software = collect(sw_tally);
  if (cfg.run_hardware) report.hardware = collect(hw_tally);
  return report;
}

UTestResult compare_implementations(const SweepReport& report,
                                    double window_lo, double window_hi,
                                    MwuMethod method) {
  if (!report.has_software || !report.has_hardware)
    fail(ErrorCode::config, "comparison needs both implementations");
  std::vector<double> software_rates, hardware_rates;
  for (int p = 0; p < report.n_patterns; ++p)
    for (size_t r = 0; r < report.noise_rates.size(); ++r) {
      const double rate = report.noise_rates[r];
      if (rate < window_lo || rate > window_hi) continue;
      software_rates.push_back(
          report.cell(Implementation::software, p, static_cast<int>(r))
              .recall_rate());
      hardware_rates.push_back(
          report.cell(Implementation::hardware, p, static_cast<int>(r))
              .recall_rate());
    }
  if (software_rates.empty())
    fail(ErrorCode::invalid_argument, "comparison window selects no cells");
  return mann_whitney_u(software_rates, hardware_rates,
                        MwuAlternative::greater, method);
}

std::string sweep_csv(const SweepReport& report) {
  std::string out =
      "implementation,pattern,noise_rate,recall_rate,trials,"
      "converged_count,two_cycle_count\n";
  auto emit = [&](const char* name, const std::vector<SweepCell>& grid) {
    for (const SweepCell& cell : grid) {
      out += name;
      out += ',';
      out += std::to_string(cell.pattern_index);
      out += ',';
      append_formatted(out, "%.4f", cell.noise_rate);
      out += ',';
      append_formatted(out, "%.6f", cell.recall_rate());
      out += ',';
      out += std::to_string(cell.trials);
      out += ',';
      out += std::to_string(cell.converged);
      out += ',';
      out += std::to_string(cell.two_cycles);
      out += '\n';
    }
  };
  if (report.has_software) emit("software", report.software);
  if (report.has_hardware) emit("hardware", report.hardware);
  return out;
}

std::string delta_r_csv(const SweepReport& report) {
  const std::vector<double> delta = report.delta_r();
  std::string out = "pattern,noise_rate,delta_r\n";
  const size_t n_rates = report.noise_rates.size();
  for (size_t i = 0; i < delta.size(); ++i) {
    out += std::to_string(i / n_rates);
    out += ',';
    append_formatted(out, "%.4f", report.noise_rates[i % n_rates]);
    out += ',';
    append_formatted(out, "%.6f", delta[i] + 0.0);  // avoid "-0"
    out += '\n';
  }
  return out;
}

std::string comparison_json(const UTestResult& result) {
  nlohmann::ordered_json doc;
  doc["u_statistic"] = result.u_statistic;
  doc["p_value"] = result.p_value;
  doc["alternative"] = "greater";
  doc["method"] = result.exact ? "exact" : "normal-approximation";
  doc["degenerate"] = result.degenerate;
  doc["n_software"] = result.n_first;
  doc["n_hardware"] = result.n_second;
  return doc.dump(2) + "\n";
}

}  // namespace spinmem
