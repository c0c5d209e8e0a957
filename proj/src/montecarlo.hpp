// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circuit.hpp"

namespace spinmem {

struct McConfig {
  int n_samples = 1000;
  DeviceParams device;
  std::optional<double> r_fixed_ohm;  // default: (R_P + R_AP) / 2 nominal
  std::vector<WeightLevel> levels = default_mc_levels();
  uint64_t seed = 1;

  static std::vector<WeightLevel> default_mc_levels();
  void validate() const;
};

struct McLevelReport {
  WeightLevel level;
  std::vector<double> samples;  // divider fractions, in sample-index order
  double q1 = 0.0, median = 0.0, q3 = 0.0;
  double min = 0.0, max = 0.0;
};

struct McReport {
  std::vector<McLevelReport> levels;
};

// Process-variation study of the synapse output: n_samples synapses per
// weight level, each built from four independently sampled MTJs (the fixed
// resistor stays nominal), programmed to the level's canonical configuration.
// Every sample's random stream derives from (seed, level, sample index), so
// the report is identical for any worker count.
McReport run_weight_mc(const McConfig& cfg, int threads = 0);

// q1(level k+1) - q3(level k) for each adjacent pair; a positive margin means
// the interquartile ranges are disjoint.
std::vector<double> iqr_separation(const McReport& report);

std::string mc_samples_csv(const McReport& report);
std::string mc_summary_csv(const McReport& report);

}  // namespace spinmem
