// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "circuit.hpp"

namespace spinmem {

// Bipolar pattern, entries in {-1, +1}. Externally patterns travel as bits
// (0/1); bit 1 corresponds to +1.
struct Pattern {
  std::vector<int8_t> values;
  int size() const { return static_cast<int>(values.size()); }
  bool operator==(const Pattern&) const = default;
};

void validate_pattern(const Pattern& p);
std::vector<uint8_t> to_bits(const Pattern& p);
Pattern from_bits(const std::vector<uint8_t>& bits);

// Integer Hebbian weights, W = sum_k P_k P_k^T. Always symmetric; entries
// bounded by the number of trained patterns.
struct WeightMatrix {
  int n = 0;
  int m = 0;  // number of trained patterns
  bool zero_diagonal = true;
  std::vector<int32_t> w;  // row-major n*n

  int32_t at(int i, int j) const { return w[static_cast<size_t>(i) * n + j]; }
  int32_t& at(int i, int j) { return w[static_cast<size_t>(i) * n + j]; }
};

WeightMatrix train(std::span<const Pattern> patterns, bool zero_diagonal);

// Integer weight -> hardware level. Zero weights disconnect (the five
// electrical levels are all nonzero, so zero has no in-circuit encoding);
// nonzero magnitudes rescale linearly from [1, w_max] onto levels 0..4.
struct QuantizationMap {
  int w_max = 1;
  std::optional<WeightLevel> map(int32_t w) const;
};

struct HardwareOptions {
  DeviceParams device;
  std::optional<double> r_fixed_ohm;  // default: (R_P + R_AP) / 2
  NeuronParams neuron;

  double resolved_r_fixed() const {
    return r_fixed_ohm ? *r_fixed_ohm : default_r_fixed_ohm(device);
  }
};

// The programmed n x n synapse grid. Built from nominal devices, so every
// cell at the same (level, sign) is an identical physical value; the grid
// stores per-cell programming plus one prototype synapse per (level, sign).
class HardwareNetwork {
 public:
  HardwareNetwork(int n, const HardwareOptions& opts, QuantizationMap qmap);

  int n() const { return n_; }
  const NeuronParams& neuron() const { return neuron_; }
  const QuantizationMap& quantization() const { return qmap_; }
  double r_fixed_ohm() const { return r_fixed_ohm_; }

  void program(int i, int j, std::optional<WeightLevel> weight);

  bool connected(int i, int j) const { return connected_[idx(i, j)] != 0; }
  WeightLevel level_at(int i, int j) const;        // pre: connected
  const Synapse& synapse(int i, int j) const;      // pre: connected
  double fraction(int level) const { return fraction_[level]; }

 private:
  size_t idx(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }

  int n_;
  NeuronParams neuron_;
  QuantizationMap qmap_;
  double r_fixed_ohm_;
  std::vector<uint8_t> connected_;
  std::vector<int8_t> level_;
  std::vector<int8_t> negative_;
  std::array<Synapse, kWeightLevels> positive_protos_;
  std::array<Synapse, kWeightLevels> negative_protos_;
  std::array<double, kWeightLevels> fraction_;
};

// Program a full hardware network from the integer weight matrix.
HardwareNetwork quantize(const WeightMatrix& weights,
                         const HardwareOptions& opts);

// One synchronous update, x_j = sum_i w[i][j] * y_i, threshold at theta
// (ties fire +1). All neurons update simultaneously.
Pattern step_software(const WeightMatrix& weights, const Pattern& y,
                      double theta);

// One synchronous update through the modeled datapath: converter -> synapse
// divider -> threshold neuron, per column. A fully disconnected column is an
// error.
std::vector<uint8_t> step_hardware(const HardwareNetwork& net,
                                   const std::vector<uint8_t>& y_bits);

struct RecallResult {
  Pattern final;
  int iterations = 0;
  bool converged = false;
  bool two_cycle = false;
};

// Iterate until a fixed point, a period-2 cycle, or max_iters. Synchronous
// Hopfield dynamics admit two-cycles; they are reported, not hidden.
RecallResult recall_software(const WeightMatrix& weights, const Pattern& y0,
                             int max_iters, double theta = 0.0);
RecallResult recall_hardware(const HardwareNetwork& net, const Pattern& y0,
                             int max_iters);

}  // namespace spinmem
