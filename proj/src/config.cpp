// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <json.hpp>

#include "error.hpp"
#include "serialize.hpp"

namespace spinmem {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& section,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known)
      fail(ErrorCode::config,
           "unknown key '" + item.key() + "' in " + section);
  }
}

template <typename T>
void get_to(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    obj.at(key).get_to(out);
  } catch (const json::exception& e) {
    fail(ErrorCode::config, std::string("bad value for '") + key + "': " +
                                e.what());
  }
}

void parse_device(const json& obj, DeviceParams& device) {
  check_keys(obj, "device",
             {"t_fl_nm", "sigma_t_fl_nm", "cd_nm", "t_tb_nm", "sigma_t_tb_nm",
              "tmr_ratio", "sigma_tmr", "r_p_nominal_ohm",
              "barrier_sensitivity_per_nm"});
  get_to(obj, "t_fl_nm", device.t_fl_nm);
  get_to(obj, "sigma_t_fl_nm", device.sigma_t_fl_nm);
  get_to(obj, "cd_nm", device.cd_nm);
  get_to(obj, "t_tb_nm", device.t_tb_nm);
  get_to(obj, "sigma_t_tb_nm", device.sigma_t_tb_nm);
  get_to(obj, "tmr_ratio", device.tmr_ratio);
  get_to(obj, "sigma_tmr", device.sigma_tmr);
  get_to(obj, "r_p_nominal_ohm", device.r_p_nominal_ohm);
  get_to(obj, "barrier_sensitivity_per_nm", device.barrier_sensitivity_per_nm);
  device.validate();
}

void parse_circuit(const json& obj, RunConfig& cfg) {
  check_keys(obj, "circuit", {"r_fixed_ohm", "v_ref", "adder_mode"});
  if (obj.contains("r_fixed_ohm")) {
    double r = 0.0;
    get_to(obj, "r_fixed_ohm", r);
    if (!(r > 0.0)) fail(ErrorCode::config, "r_fixed_ohm must be positive");
    cfg.r_fixed_ohm = r;
  }
  get_to(obj, "v_ref", cfg.neuron.v_ref);
  if (obj.contains("adder_mode")) {
    std::string mode;
    get_to(obj, "adder_mode", mode);
    if (mode == "sum") {
      cfg.neuron.adder_mode = NeuronParams::AdderMode::sum;
    } else if (mode == "average") {
      cfg.neuron.adder_mode = NeuronParams::AdderMode::average;
    } else {
      fail(ErrorCode::config, "adder_mode must be 'sum' or 'average'");
    }
  }
}

void parse_patterns_section(const json& obj, RunConfig& cfg) {
  check_keys(obj, "patterns",
             {"file", "idx_images", "binarize_threshold", "select"});
  get_to(obj, "file", cfg.patterns_file);
  get_to(obj, "idx_images", cfg.idx_images);
  get_to(obj, "binarize_threshold", cfg.binarize_threshold);
  get_to(obj, "select", cfg.pattern_select);
  if (!cfg.patterns_file.empty() && !cfg.idx_images.empty())
    fail(ErrorCode::config, "give either patterns.file or patterns.idx_images");
  if (cfg.binarize_threshold < 0 || cfg.binarize_threshold > 255)
    fail(ErrorCode::config, "binarize_threshold must be in [0,255]");
}

void parse_sweep(const json& obj, RunConfig& cfg) {
  check_keys(obj, "sweep",
             {"noise_rates", "noise_start", "noise_stop", "noise_step",
              "trials_per_point", "implementations", "max_iters",
              "noise_model", "compare_window"});
  const bool has_list = obj.contains("noise_rates");
  const bool has_range = obj.contains("noise_start") ||
                         obj.contains("noise_stop") ||
                         obj.contains("noise_step");
  if (has_list && has_range)
    fail(ErrorCode::config, "give either sweep.noise_rates or a range");
  if (has_list) {
    get_to(obj, "noise_rates", cfg.noise_rates);
  } else if (has_range) {
    double start = 0.0, stop = 1.0, step = 0.05;
    get_to(obj, "noise_start", start);
    get_to(obj, "noise_stop", stop);
    get_to(obj, "noise_step", step);
    if (!(step > 0.0)) fail(ErrorCode::config, "noise_step must be positive");
    cfg.noise_rates.clear();
    for (double r = start; r <= stop + 1e-12; r += step)
      cfg.noise_rates.push_back(std::min(r, stop));
  }
  get_to(obj, "trials_per_point", cfg.trials_per_point);
  get_to(obj, "max_iters", cfg.max_iters);
  if (obj.contains("implementations")) {
    std::vector<std::string> impls;
    get_to(obj, "implementations", impls);
    cfg.sweep_software = false;
    cfg.sweep_hardware = false;
    for (const std::string& name : impls) {
      if (name == "software") {
        cfg.sweep_software = true;
      } else if (name == "hardware") {
        cfg.sweep_hardware = true;
      } else {
        fail(ErrorCode::config, "unknown implementation '" + name + "'");
      }
    }
    if (!cfg.sweep_software && !cfg.sweep_hardware)
      fail(ErrorCode::config, "implementations list is empty");
  }
  if (obj.contains("noise_model")) {
    std::string model;
    get_to(obj, "noise_model", model);
    if (model == "exact_count") {
      cfg.noise_model = NoiseModel::exact_count;
    } else if (model == "bernoulli") {
      cfg.noise_model = NoiseModel::bernoulli;
    } else {
      fail(ErrorCode::config,
           "noise_model must be 'exact_count' or 'bernoulli'");
    }
  }
  if (obj.contains("compare_window")) {
    std::vector<double> window;
    get_to(obj, "compare_window", window);
    if (window.size() != 2 || window[0] > window[1])
      fail(ErrorCode::config, "compare_window must be [lo, hi] with lo <= hi");
    cfg.compare_window_lo = window[0];
    cfg.compare_window_hi = window[1];
  }
}

void parse_mc(const json& obj, RunConfig& cfg) {
  check_keys(obj, "mc", {"n_samples", "levels"});
  get_to(obj, "n_samples", cfg.mc_samples);
  get_to(obj, "levels", cfg.mc_levels);
}

void parse_network(const json& obj, RunConfig& cfg) {
  check_keys(obj, "network", {"zero_diagonal"});
  get_to(obj, "zero_diagonal", cfg.zero_diagonal);
}

}  // namespace

RunConfig RunConfig::from_json_text(std::string_view text,
                                    const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::config, origin + ": " + e.what());
  }
  if (!doc.is_object())
    fail(ErrorCode::config, origin + ": config root must be an object");

  check_keys(doc, "config root",
             {"seed", "threads", "out_dir", "device", "circuit", "network",
              "patterns", "sweep", "mc"});
  RunConfig cfg;
  get_to(doc, "seed", cfg.seed);
  get_to(doc, "threads", cfg.threads);
  get_to(doc, "out_dir", cfg.out_dir);
  if (cfg.threads < 0) fail(ErrorCode::config, "threads must be >= 0");
  if (doc.contains("device")) parse_device(doc.at("device"), cfg.device);
  if (doc.contains("circuit")) parse_circuit(doc.at("circuit"), cfg);
  if (doc.contains("network")) parse_network(doc.at("network"), cfg);
  if (doc.contains("patterns")) parse_patterns_section(doc.at("patterns"), cfg);
  if (doc.contains("sweep")) parse_sweep(doc.at("sweep"), cfg);
  if (doc.contains("mc")) parse_mc(doc.at("mc"), cfg);
  return cfg;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  return from_json_text(read_text_file(path), path);
}

HardwareOptions RunConfig::hardware_options() const {
  HardwareOptions opts;
  opts.device = device;
  opts.r_fixed_ohm = r_fixed_ohm;
  opts.neuron = neuron;
  return opts;
}

PatternSet RunConfig::load_pattern_set() const {
  PatternSet set;
  if (!patterns_file.empty()) {
    set = load_patterns(patterns_file);
  } else if (!idx_images.empty()) {
    set = load_idx_images(idx_images, binarize_threshold);
  } else {
    fail(ErrorCode::config, "no pattern source configured");
  }
  if (!pattern_select.empty()) set = select_patterns(set, pattern_select);
  return set;
}

SweepConfig RunConfig::sweep_config(const PatternSet& set) const {
  SweepConfig cfg;
  cfg.patterns = set.patterns;
  cfg.noise_rates = noise_rates;
  cfg.trials_per_point = trials_per_point;
  cfg.run_software = sweep_software;
  cfg.run_hardware = sweep_hardware;
  cfg.seed = seed;
  cfg.max_iters = max_iters;
  cfg.zero_diagonal = zero_diagonal;
  cfg.hardware = hardware_options();
  cfg.noise_model = noise_model;
  return cfg;
}

McConfig RunConfig::mc_config() const {
  McConfig cfg;
  cfg.n_samples = mc_samples;
  cfg.device = device;
  cfg.r_fixed_ohm = r_fixed_ohm;
  cfg.seed = seed;
  cfg.levels.clear();
  for (int lvl : mc_levels)
    cfg.levels.push_back(WeightLevel{lvl, WeightSign::positive});
  return cfg;
}

}  // namespace spinmem
