// SPDX-License-Identifier: Apache-2.0
#include "network.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "error.hpp"

namespace spinmem {

void validate_pattern(const Pattern& p) {
  if (p.values.empty())
    fail(ErrorCode::invalid_argument, "pattern must be non-empty");
  for (int8_t v : p.values)
    if (v != 1 && v != -1)
      fail(ErrorCode::invalid_argument, "pattern entries must be -1 or +1");
}

std::vector<uint8_t> to_bits(const Pattern& p) {
  std::vector<uint8_t> bits(p.values.size());
  for (size_t i = 0; i < bits.size(); ++i) bits[i] = p.values[i] > 0 ? 1 : 0;
  return bits;
}

Pattern from_bits(const std::vector<uint8_t>& bits) {
  Pattern p;
  p.values.resize(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) p.values[i] = bits[i] ? 1 : -1;
  return p;
}

WeightMatrix train(std::span<const Pattern> patterns, bool zero_diagonal) {
  if (patterns.empty())
    fail(ErrorCode::invalid_argument, "training needs at least one pattern");
  const int n = patterns.front().size();
  for (const Pattern& p : patterns) {
    validate_pattern(p);
    if (p.size() != n)
      fail(ErrorCode::dimension, "pattern length " + std::to_string(p.size()) +
                                     " does not match dimension " +
                                     std::to_string(n));
  }
  WeightMatrix weights;
  weights.n = n;
  weights.m = static_cast<int>(patterns.size());
  weights.zero_diagonal = zero_diagonal;
  weights.w.assign(static_cast<size_t>(n) * n, 0);
  for (const Pattern& p : patterns)
    for (int i = 0; i < n; ++i) {
      const int32_t pi = p.values[i];
      for (int j = 0; j < n; ++j)
        weights.at(i, j) += pi * p.values[j];
    }
  if (zero_diagonal)
    for (int i = 0; i < n; ++i) weights.at(i, i) = 0;
  return weights;
}

std::optional<WeightLevel> QuantizationMap::map(int32_t w) const {
  if (w == 0) return std::nullopt;
  const int mag = std::abs(w);
  int level;
  if (w_max <= 1) {
    level = kWeightLevels - 1;
  } else {
    level = static_cast<int>(
        std::lround(4.0 * (mag - 1) / static_cast<double>(w_max - 1)));
    level = std::clamp(level, 0, kWeightLevels - 1);
  }
  return WeightLevel{level,
                     w > 0 ? WeightSign::positive : WeightSign::negative};
}

HardwareNetwork::HardwareNetwork(int n, const HardwareOptions& opts,
                                 QuantizationMap qmap)
    : n_(n),
      neuron_(opts.neuron),
      qmap_(qmap),
      r_fixed_ohm_(opts.resolved_r_fixed()),
      connected_(static_cast<size_t>(n) * n, 0),
      level_(static_cast<size_t>(n) * n, 0),
      negative_(static_cast<size_t>(n) * n, 0) {
  if (n < 1) fail(ErrorCode::invalid_argument, "network dimension must be >= 1");
  for (int lvl = 0; lvl < kWeightLevels; ++lvl) {
    positive_protos_[lvl] = nominal_synapse(
        opts.device, WeightLevel{lvl, WeightSign::positive}, r_fixed_ohm_);
    negative_protos_[lvl] = nominal_synapse(
        opts.device, WeightLevel{lvl, WeightSign::negative}, r_fixed_ohm_);
    fraction_[lvl] = divider_fraction(positive_protos_[lvl]);
  }
}

void HardwareNetwork::program(int i, int j, std::optional<WeightLevel> weight) {
  const size_t k = idx(i, j);
  if (!weight) {
    connected_[k] = 0;
    level_[k] = 0;
    negative_[k] = 0;
    return;
  }
  connected_[k] = 1;
  level_[k] = static_cast<int8_t>(weight->level);
  negative_[k] = weight->sign == WeightSign::negative ? 1 : 0;
}

WeightLevel HardwareNetwork::level_at(int i, int j) const {
  const size_t k = idx(i, j);
  return WeightLevel{level_[k], negative_[k] ? WeightSign::negative
                                             : WeightSign::positive};
}

const Synapse& HardwareNetwork::synapse(int i, int j) const {
  const size_t k = idx(i, j);
  return negative_[k] ? negative_protos_[level_[k]]
                      : positive_protos_[level_[k]];
}

HardwareNetwork quantize(const WeightMatrix& weights,
                         const HardwareOptions& opts) {
  int w_max = 0;
  for (int32_t w : weights.w) w_max = std::max(w_max, std::abs(w));
  HardwareNetwork net(weights.n, opts, QuantizationMap{w_max});
  for (int i = 0; i < weights.n; ++i)
    for (int j = 0; j < weights.n; ++j)
      net.program(i, j, net.quantization().map(weights.at(i, j)));
  return net;
}

Pattern step_software(const WeightMatrix& weights, const Pattern& y,
                      double theta) {
  if (y.size() != weights.n)
    fail(ErrorCode::dimension, "state length does not match network");
  const int n = weights.n;
  Pattern next;
  next.values.resize(n);
  for (int j = 0; j < n; ++j) {
    int64_t x = 0;
    for (int i = 0; i < n; ++i)
      x += static_cast<int64_t>(weights.at(i, j)) * y.values[i];
    next.values[j] = static_cast<double>(x) >= theta ? 1 : -1;
  }
  return next;
}

std::vector<uint8_t> step_hardware(const HardwareNetwork& net,
                                   const std::vector<uint8_t>& y_bits) {
  const int n = net.n();
  if (static_cast<int>(y_bits.size()) != n)
    fail(ErrorCode::dimension, "state length does not match network");
  std::vector<uint8_t> next(n);
  std::vector<double> psps;
  psps.reserve(n);
  for (int j = 0; j < n; ++j) {
    psps.clear();
    for (int i = 0; i < n; ++i) {
      if (!net.connected(i, j)) continue;
      const WeightLevel w = net.level_at(i, j);
      // convert() + psp() against the cell's prototype synapse; the divider
      // fraction is cached per level at programming time.
      const int v_ws = w.sign == WeightSign::negative ? 1 : 0;
      const double rail = y_bits[i] != v_ws ? 1.0 : -1.0;
      psps.push_back(net.fraction(w.level) * rail);
    }
    if (psps.empty())
      fail(ErrorCode::disconnected_neuron,
           "neuron " + std::to_string(j) + " has no connected synapses");
    next[j] = static_cast<uint8_t>(neuron_fire(psps, net.neuron()));
  }
  return next;
}

namespace {

template <typename StepFn>
RecallResult recall_loop(StepFn&& step, const Pattern& y0, int max_iters) {
  if (max_iters < 1)
    fail(ErrorCode::invalid_argument, "max_iters must be >= 1");
  validate_pattern(y0);
  RecallResult result;
  Pattern prev;       // y(t-1)
  Pattern curr = y0;  // y(t)
  for (int t = 0; t < max_iters; ++t) {
    Pattern next = step(curr);
    result.iterations = t + 1;
    if (next == curr) {
      result.converged = true;
      result.final = std::move(next);
      return result;
    }
    if (t > 0 && next == prev) {
      result.two_cycle = true;
      result.final = std::move(next);
      return result;
    }
    prev = std::move(curr);
    curr = std::move(next);
  }
  result.final = std::move(curr);
  return result;
}

}  // namespace

RecallResult recall_software(const WeightMatrix& weights, const Pattern& y0,
                             int max_iters, double theta) {
  return recall_loop(
      [&](const Pattern& y) { return step_software(weights, y, theta); }, y0,
      max_iters);
}

RecallResult recall_hardware(const HardwareNetwork& net, const Pattern& y0,
                             int max_iters) {
  return recall_loop(
      [&](const Pattern& y) { return from_bits(step_hardware(net, to_bits(y))); },
      y0, max_iters);
}

}  // namespace spinmem
