// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: reproduces the headline properties of the modeled
// circuit and network end to end, printing one PASS/FAIL line per
// criterion. Exits nonzero if any criterion fails.
//
//   usage: spinmem_acceptance [source_root] [scratch_dir]

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "config.hpp"
#include "experiments.hpp"
#include "montecarlo.hpp"
#include "network.hpp"
#include "oracles.hpp"
#include "patterns.hpp"
#include "serialize.hpp"
#include "stats.hpp"

using namespace spinmem;

namespace {

std::string g_source_root = ".";
std::string g_scratch = "acceptance_out";
int g_failed = 0;

void report(int criterion, const char* title, bool ok,
            const std::string& detail = {}) {
  if (ok) {
    std::printf("PASS criterion %d: %s\n", criterion, title);
  } else {
    ++g_failed;
    std::printf("FAIL criterion %d: %s%s%s\n", criterion, title,
                detail.empty() ? "" : " -- ", detail.c_str());
  }
  std::fflush(stdout);
}

std::string asset(const char* rel) { return g_source_root + "/" + rel; }

// 1. Converter truth table, exhaustive and exact.
void criterion_1() {
  const bool ok = convert(0, 0).value() == -1.0 &&
                  convert(0, 1).value() == +1.0 &&
                  convert(1, 0).value() == +1.0 &&
                  convert(1, 1).value() == -1.0;
  report(1, "converter truth table matches on all four input pairs", ok);
}

// 2. Divider fraction vs nodal analysis over random resistances.
void criterion_2() {
  RandomEngine rng = make_engine(substream(2026, 2));
  const double lo = std::log(100.0), hi = std::log(100000.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double r[5];
    for (double& v : r) v = std::exp(lo + (hi - lo) * uniform01(rng));
    Synapse syn;
    for (int k = 0; k < 4; ++k)
      syn.weight_mtjs[k] = MtjInstance{MtjState::P, 0.85, 1.3, 2.49, r[k]};
    syn.sign_mtj = MtjInstance{MtjState::P, 0.85, 1.3, 2.49, 1000.0};
    syn.r_fixed_ohm = r[4];
    const double closed = divider_fraction(syn);
    const double nodal =
        test::nodal_divider_fraction(r[0], r[1], r[2], r[3], r[4]);
    worst = std::max(worst, std::abs(closed - nodal) / closed);
  }
  report(2, "divider fraction matches the nodal oracle to 1e-12",
         worst <= 1e-12, "worst relative error " + std::to_string(worst));
}

// 3. The five canonical level fractions at Table-2 nominals.
void criterion_3() {
  const DeviceParams params;
  const double r_fixed = default_r_fixed_ohm(params);
  const double expected[5] = {0.30817, 0.38132, 0.50000, 0.54905, 0.60862};
  bool ok = true;
  std::string detail;
  for (int level = 0; level < kWeightLevels; ++level) {
    const double frac = divider_fraction(
        nominal_synapse(params, WeightLevel{level, WeightSign::positive},
                        r_fixed));
    if (std::abs(frac - expected[level]) > 1e-4) {
      ok = false;
      detail += "level " + std::to_string(level) + " fraction " +
                std::to_string(frac) + "; ";
    }
  }
  const double mid = divider_fraction(
      nominal_synapse(params, WeightLevel{2, WeightSign::positive}, r_fixed));
  if (mid != 0.5) {
    ok = false;
    detail += "level 2 not exactly 0.5";
  }
  report(3, "canonical weight-level spectrum within 1e-4, level 2 exact", ok,
         detail);
}

// 4. Monte Carlo separability at Table-2 sigmas: disjoint IQRs, rising
// medians, 1000 samples per level.
McConfig mc_config() {
  McConfig cfg;
  cfg.n_samples = 1000;
  cfg.seed = 1;
  return cfg;
}

McReport criterion_4() {
  const McReport mc = run_weight_mc(mc_config());
  bool ok = true;
  std::string detail;
  double prev = 0.0;
  for (const McLevelReport& lvl : mc.levels) {
    if (!(lvl.median > prev)) {
      ok = false;
      detail += "median not increasing at level " +
                std::to_string(lvl.level.level) + "; ";
    }
    prev = lvl.median;
  }
  const std::vector<double> margins = iqr_separation(mc);
  for (size_t k = 0; k < margins.size(); ++k)
    if (!(margins[k] > 0.0)) {
      ok = false;
      detail += "IQR overlap between levels " + std::to_string(k) + " and " +
                std::to_string(k + 1) + " (margin " +
                std::to_string(margins[k]) + "); ";
    }
  report(4, "process-variation IQRs disjoint with rising medians", ok, detail);
  return mc;
}

// 5. Recall fidelity of the bundled 10x10 digits over the full noise sweep.
SweepConfig digit_sweep_config() {
  SweepConfig cfg;
  cfg.patterns = load_patterns(asset("patterns/digits_10x10.txt")).patterns;
  cfg.trials_per_point = 1000;
  cfg.seed = 1;
  return cfg;
}

SweepReport criterion_5() {
  const SweepConfig cfg = digit_sweep_config();
  const SweepReport sweep_report = sweep(cfg);
  bool ok = true;
  std::string detail;
  for (Implementation impl :
       {Implementation::software, Implementation::hardware}) {
    const char* name = impl == Implementation::software ? "sw" : "hw";
    for (int p = 0; p < sweep_report.n_patterns; ++p) {
      std::vector<double> rates;
      for (size_t r = 0; r < sweep_report.noise_rates.size(); ++r)
        rates.push_back(sweep_report.cell(impl, p, static_cast<int>(r))
                            .recall_rate());
      if (rates[0] != 1.0) {
        ok = false;
        detail += std::string(name) + " pattern " + std::to_string(p) +
                  " R(0) = " + std::to_string(rates[0]) + "; ";
      }
      for (int r = 1; r <= 2; ++r)  // 0.05 and 0.10
        if (rates[r] < 0.95) {
          ok = false;
          detail += std::string(name) + " pattern " + std::to_string(p) +
                    " R(" + std::to_string(sweep_report.noise_rates[r]) +
                    ") = " + std::to_string(rates[r]) + "; ";
        }
      const double rho = spearman(sweep_report.noise_rates, rates);
      if (!(rho <= -0.8)) {
        ok = false;
        detail += std::string(name) + " pattern " + std::to_string(p) +
                  " spearman " + std::to_string(rho) + "; ";
      }
    }
  }
  report(5, "digit recall: exact at 0 noise, >=0.95 through 10%, monotone decay",
         ok, detail);
  return sweep_report;
}

// 6. Software-vs-hardware Mann-Whitney on the criterion-5 sweep.
void criterion_6(const SweepReport& sweep_report) {
  const UTestResult result = compare_implementations(sweep_report);
  report(6, "hardware recall statistically comparable to software (p > 0.05)",
         result.p_value > 0.05,
         "p = " + std::to_string(result.p_value));
}

// 7. 784-neuron network on binarized digits through the IDX path.
void criterion_7() {
  const PatternSet digits =
      load_patterns(asset("patterns/digits_28x28.txt"));
  const std::string idx_path = g_scratch + "/digits_28x28.idx";
  write_text_file(idx_path, encode_idx_images(digits, 255, 0));
  const PatternSet binarized = load_idx_images(idx_path, 128);

  bool ok = binarized.patterns == digits.patterns;
  std::string detail = ok ? "" : "IDX round trip changed the patterns; ";

  SweepConfig cfg;
  cfg.patterns = binarized.patterns;
  cfg.noise_rates = {0.30};
  cfg.trials_per_point = 100;
  cfg.seed = 1;
  const SweepReport result = sweep(cfg);
  for (int p = 0; p < result.n_patterns; ++p) {
    const double sw =
        result.cell(Implementation::software, p, 0).recall_rate();
    const double hw =
        result.cell(Implementation::hardware, p, 0).recall_rate();
    if (sw < 0.90 || hw < 0.90) {
      ok = false;
      detail += "pattern " + std::to_string(p) + " R(sw) = " +
                std::to_string(sw) + " R(hw) = " + std::to_string(hw) + "; ";
    }
    if (std::abs(hw - sw) > 0.05) {
      ok = false;
      detail += "pattern " + std::to_string(p) + " |dR| = " +
                std::to_string(std::abs(hw - sw)) + "; ";
    }
  }
  report(7, "784-neuron recall >= 0.90 at 30% noise with |dR| <= 0.05", ok,
         detail);
}

// 8. Mann-Whitney implementation: frozen exact case plus agreement between
// the exact tail and the normal approximation.
void criterion_8() {
  bool ok = true;
  std::string detail;
  const std::vector<double> a{1, 2};
  const std::vector<double> b{3, 4};
  const double p_small = mann_whitney_u(a, b).p_value;
  if (std::abs(p_small - 1.0 / 6.0) > 1e-12) {
    ok = false;
    detail += "[1,2] vs [3,4] gave p = " + std::to_string(p_small) + "; ";
  }

  RandomEngine rng = make_engine(substream(2026, 8));
  double worst = 0.0;
  for (int round = 0; round < 100; ++round) {
    const size_t n = 15 + uniform_below(rng, 11);   // combined 15..25
    const size_t na = 5 + uniform_below(rng, n - 9);
    std::vector<double> x(na), y(n - na);
    for (double& v : x) v = standard_normal(rng);
    for (double& v : y) v = standard_normal(rng);
    const double exact =
        mann_whitney_u(x, y, MwuAlternative::greater, MwuMethod::exact)
            .p_value;
    const double approx = mann_whitney_u(x, y, MwuAlternative::greater,
                                         MwuMethod::normal_approximation)
                              .p_value;
    worst = std::max(worst, std::abs(exact - approx));
  }
  if (worst > 0.02) {
    ok = false;
    detail += "worst |exact - normal| = " + std::to_string(worst);
  }
  report(8, "Mann-Whitney exact tail and normal approximation agree", ok,
         detail);
}

// 9. Byte-identical CSVs between 1 worker and N workers.
void criterion_9(const McReport& mc_parallel, const SweepReport& sweep_parallel) {
  const McReport mc_serial = run_weight_mc(mc_config(), 1);
  const std::string mc_samples_1 = mc_samples_csv(mc_serial);
  const std::string mc_samples_n = mc_samples_csv(mc_parallel);
  const std::string mc_summary_1 = mc_summary_csv(mc_serial);
  const std::string mc_summary_n = mc_summary_csv(mc_parallel);

  const SweepReport sweep_serial = sweep(digit_sweep_config(), 1);
  const std::string sweep_1 = sweep_csv(sweep_serial);
  const std::string sweep_n = sweep_csv(sweep_parallel);
  const std::string delta_1 = delta_r_csv(sweep_serial);
  const std::string delta_n = delta_r_csv(sweep_parallel);

  write_text_file(g_scratch + "/mc_samples.csv", mc_samples_n);
  write_text_file(g_scratch + "/mc_summary.csv", mc_summary_n);
  write_text_file(g_scratch + "/sweep.csv", sweep_n);
  write_text_file(g_scratch + "/delta_r.csv", delta_n);

  bool ok = true;
  std::string detail;
  if (mc_samples_1 != mc_samples_n || mc_summary_1 != mc_summary_n) {
    ok = false;
    detail += "Monte Carlo CSVs differ across worker counts; ";
  }
  if (sweep_1 != sweep_n || delta_1 != delta_n) {
    ok = false;
    detail += "sweep CSVs differ across worker counts";
  }
  report(9, "1-worker and N-worker runs produce byte-identical CSVs", ok,
         detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_source_root = argv[1];
  if (argc > 2) g_scratch = argv[2];
  std::filesystem::create_directories(g_scratch);

  try {
    criterion_1();
    criterion_2();
    criterion_3();
    const McReport mc = criterion_4();
    const SweepReport sweep_report = criterion_5();
    criterion_6(sweep_report);
    criterion_7();
    criterion_8();
    criterion_9(mc, sweep_report);
  } catch (const std::exception& e) {
    std::printf("FAIL: acceptance aborted: %s\n", e.what());
    return 1;
  }

  if (g_failed == 0) {
    std::printf("acceptance: all 9 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failed);
  return 1;
}
