// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "network.hpp"
#include "stats.hpp"

namespace spinmem {

enum class Implementation : uint8_t { software = 0, hardware = 1 };

enum class NoiseModel : uint8_t { exact_count = 0, bernoulli = 1 };

// Flip exactly round(rate * n) distinct, uniformly chosen positions.
Pattern inject_noise(const Pattern& p, double rate, RandomEngine& rng);

// Sensitivity-analysis variant: each position flips independently with
// probability rate.
Pattern inject_noise_bernoulli(const Pattern& p, double rate, RandomEngine& rng);

// Fraction of trials that converge exactly to the target. Each trial's
// stream derives from (seed, trial index); non-convergent and two-cycle
// trials count as failures.
double recall_rate(const WeightMatrix& weights, const Pattern& target,
                   double rate, int trials, uint64_t seed, int max_iters = 100,
                   double theta = 0.0,
                   NoiseModel noise = NoiseModel::exact_count);
double recall_rate(const HardwareNetwork& net, const Pattern& target,
                   double rate, int trials, uint64_t seed, int max_iters = 100,
                   NoiseModel noise = NoiseModel::exact_count);

struct SweepConfig {
  std::vector<Pattern> patterns;
  std::vector<double> noise_rates = default_noise_rates();
  int trials_per_point = 1000;
  bool run_software = true;
  bool run_hardware = true;
  uint64_t seed = 1;
  int max_iters = 100;
  bool zero_diagonal = true;
  HardwareOptions hardware;  // device, r_fixed, neuron (v_ref also thresholds
                             // the software network)
  NoiseModel noise_model = NoiseModel::exact_count;

  static std::vector<double> default_noise_rates();  // 0.00 .. 1.00 step 0.05
  void validate() const;
};

struct SweepCell {
  int pattern_index = 0;
  double noise_rate = 0.0;
  int trials = 0;
  int successes = 0;
  int converged = 0;
  int two_cycles = 0;

  double recall_rate() const {
    return trials > 0 ? static_cast<double>(successes) / trials : 0.0;
  }
};

struct SweepReport {
  std::vector<double> noise_rates;
  int n_patterns = 0;
  bool has_software = false;
  bool has_hardware = false;
  std::vector<SweepCell> software;  // indexed pattern * n_rates + rate
  std::vector<SweepCell> hardware;

  const SweepCell& cell(Implementation impl, int pattern, int rate_index) const;
  // R(hardware) - R(software), same indexing as the cell grids.
  std::vector<double> delta_r() const;
};

// Run recall_rate over every (implementation, pattern, noise rate) triple.
// The same noisy input is presented to both implementations at the same
// (pattern, rate, trial) index: the noise stream derives from
// (seed, pattern, rate, trial) and never from the implementation, so the
// report is reproducible for any worker count.
SweepReport sweep(const SweepConfig& cfg, int threads = 0);

// Paper-direction comparison: per-(pattern, rate) recall rates inside the
// window form the samples, software first, hardware second, one-sided
// alternative that hardware dominates.
UTestResult compare_implementations(const SweepReport& report,
                                    double window_lo = 0.0,
                                    double window_hi = 1.0,
                                    MwuMethod method = MwuMethod::automatic);

std::string sweep_csv(const SweepReport& report);
std::string delta_r_csv(const SweepReport& report);
std::string comparison_json(const UTestResult& result);

}  // namespace spinmem
