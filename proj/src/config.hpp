// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "montecarlo.hpp"
#include "patterns.hpp"

namespace spinmem {

// Whole-run configuration, loadable from a JSON file. Unknown keys are
// rejected so a misspelled option cannot silently fall back to a default.
struct RunConfig {
  uint64_t seed = 1;
  int threads = 0;  // 0 = all hardware threads
  std::string out_dir = "runs/out";

  DeviceParams device;
  std::optional<double> r_fixed_ohm;
  NeuronParams neuron;
  bool zero_diagonal = true;

  // Pattern source: a text grid file or an IDX image file.
  std::string patterns_file;
  std::string idx_images;
  int binarize_threshold = 128;
  std::vector<int> pattern_select;  // optional subset, by index

  // Sweep section.
  std::vector<double> noise_rates = SweepConfig::default_noise_rates();
  int trials_per_point = 1000;
  bool sweep_software = true;
  bool sweep_hardware = true;
  int max_iters = 100;
  NoiseModel noise_model = NoiseModel::exact_count;
  double compare_window_lo = 0.0;
  double compare_window_hi = 1.0;

  // Monte Carlo section.
  int mc_samples = 1000;
  std::vector<int> mc_levels = {0, 1, 2, 3, 4};

  static RunConfig from_json_text(std::string_view text,
                                  const std::string& origin = "<memory>");
  static RunConfig from_json_file(const std::string& path);

  HardwareOptions hardware_options() const;
  PatternSet load_pattern_set() const;
  SweepConfig sweep_config(const PatternSet& set) const;
  McConfig mc_config() const;
};

}  // namespace spinmem
