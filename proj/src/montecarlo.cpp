// SPDX-License-Identifier: Apache-2.0
#include "montecarlo.hpp"

#include <algorithm>
#include <cstdio>

#include "error.hpp"
#include "parallel.hpp"
#include "stats.hpp"

namespace spinmem {

namespace {

constexpr uint64_t kMcStreamTag = 0x6D63u;  // "mc"

void append_fraction(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  out += buf;
}

}  // namespace

std::vector<WeightLevel> McConfig::default_mc_levels() {
  std::vector<WeightLevel> levels;
  for (int lvl = 0; lvl < kWeightLevels; ++lvl)
    levels.push_back(WeightLevel{lvl, WeightSign::positive});
  return levels;
}

void McConfig::validate() const {
  if (n_samples < 1)
    fail(ErrorCode::invalid_argument, "n_samples must be >= 1");
  if (levels.empty())
    fail(ErrorCode::invalid_argument, "at least one weight level required");
  device.validate();
  for (const WeightLevel& w : levels)
    if (w.level < 0 || w.level >= kWeightLevels)
      fail(ErrorCode::invalid_argument, "weight level out of range");
}

McReport run_weight_mc(const McConfig& cfg, int threads) {
  cfg.validate();
  const double r_fixed =
      cfg.r_fixed_ohm ? *cfg.r_fixed_ohm : default_r_fixed_ohm(cfg.device);

  McReport report;
  report.levels.resize(cfg.levels.size());
  for (size_t li = 0; li < cfg.levels.size(); ++li) {
    report.levels[li].level = cfg.levels[li];
    report.levels[li].samples.resize(cfg.n_samples);
  }

  const int64_t jobs =
      static_cast<int64_t>(cfg.levels.size()) * cfg.n_samples;
  parallel_for(jobs, threads, [&](int64_t job) {
    const size_t li = static_cast<size_t>(job / cfg.n_samples);
    const int sample = static_cast<int>(job % cfg.n_samples);
    const WeightLevel level = cfg.levels[li];
    RandomEngine rng = make_engine(
        substream(cfg.seed, kMcStreamTag, level.level, sample));
    const Synapse syn = sample_synapse(cfg.device, level, r_fixed, rng);
    report.levels[li].samples[static_cast<size_t>(sample)] =
        divider_fraction(syn);
  });

  for (McLevelReport& lvl : report.levels) {
    std::vector<double> sorted(lvl.samples);
    std::sort(sorted.begin(), sorted.end());
    lvl.q1 = quantile_sorted(sorted, 0.25);
    lvl.median = quantile_sorted(sorted, 0.50);
    lvl.q3 = quantile_sorted(sorted, 0.75);
    lvl.min = sorted.front();
    lvl.max = sorted.back();
  }
  return report;
}

std::vector<double> iqr_separation(const McReport& report) {
  std::vector<double> margins;
  for (size_t k = 0; k + 1 < report.levels.size(); ++k)
    margins.push_back(report.levels[k + 1].q1 - report.levels[k].q3);
  return margins;
}

std::string mc_samples_csv(const McReport& report) {
  std::string out = "level,sample_index,fraction\n";
  for (const McLevelReport& lvl : report.levels)
    for (size_t i = 0; i < lvl.samples.size(); ++i) {
      out += std::to_string(lvl.level.level);
      out += ',';
      out += std::to_string(i);
      out += ',';
      append_fraction(out, lvl.samples[i]);
      out += '\n';
    }
  return out;
}

std::string mc_summary_csv(const McReport& report) {
  std::string out = "level,q1,median,q3,min,max\n";
  for (const McLevelReport& lvl : report.levels) {
    out += std::to_string(lvl.level.level);
    for (double v : {lvl.q1, lvl.median, lvl.q3, lvl.min, lvl.max}) {
      out += ',';
      append_fraction(out, v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace spinmem
