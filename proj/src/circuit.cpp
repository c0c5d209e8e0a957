// SPDX-License-Identifier: Apache-2.0
#include "circuit.hpp"

#include <string>

#include "error.hpp"

namespace spinmem {

namespace {

void check_weight(WeightLevel weight) {
  if (weight.level < 0 || weight.level >= kWeightLevels)
    fail(ErrorCode::invalid_argument,
         "weight level out of range: " + std::to_string(weight.level));
}

void check_r_fixed(double r_fixed_ohm) {
  if (!(r_fixed_ohm > 0.0))
    fail(ErrorCode::invalid_argument, "r_fixed_ohm must be positive");
}

}  // namespace

double default_r_fixed_ohm(const DeviceParams& params) {
  return 0.5 * (params.r_p_nominal_ohm + params.r_ap_nominal_ohm());
}

Synapse nominal_synapse(const DeviceParams& params, WeightLevel weight,
                        double r_fixed_ohm) {
  check_r_fixed(r_fixed_ohm);
  Synapse syn;
  for (auto& mtj : syn.weight_mtjs) mtj = nominal_instance(params, MtjState::P);
  syn.sign_mtj = nominal_instance(params, MtjState::P);
  syn.r_fixed_ohm = r_fixed_ohm;
  return program_weight(syn, weight);
}

Synapse sample_synapse(const DeviceParams& params, WeightLevel weight,
                       double r_fixed_ohm, RandomEngine& rng) {
  check_r_fixed(r_fixed_ohm);
  Synapse syn;
  for (auto& mtj : syn.weight_mtjs)
    mtj = sample_instance(params, MtjState::P, rng);
  syn.sign_mtj = nominal_instance(params, MtjState::P);
  syn.r_fixed_ohm = r_fixed_ohm;
  return program_weight(syn, weight);
}

BipolarVolt convert(int v_in, int v_ws) {
  if ((v_in != 0 && v_in != 1) || (v_ws != 0 && v_ws != 1))
    fail(ErrorCode::invalid_argument, "converter inputs must be bits");
  return v_in != v_ws ? BipolarVolt::plus() : BipolarVolt::minus();
}

double divider_fraction(const Synapse& syn) {
  const double branch_a =
      resistance(syn.weight_mtjs[0]) + resistance(syn.weight_mtjs[2]);
  const double branch_b =
      resistance(syn.weight_mtjs[1]) + resistance(syn.weight_mtjs[3]);
  const double parallel_num = branch_a * branch_b;
  return parallel_num /
         (syn.r_fixed_ohm * (branch_a + branch_b) + parallel_num);
}

double psp(const Synapse& syn, BipolarVolt v_conv) {
  return divider_fraction(syn) * v_conv.value();
}

Synapse program_weight(Synapse syn, WeightLevel weight) {
  check_weight(weight);
  for (int i = 0; i < 4; ++i)
    syn.weight_mtjs[i] = set_state(
        syn.weight_mtjs[i], i < weight.level ? MtjState::AP : MtjState::P);
  syn.sign_mtj = set_state(syn.sign_mtj, weight.sign == WeightSign::negative
                                             ? MtjState::AP
                                             : MtjState::P);
  return syn;
}

int read_sign(const Synapse& syn) {
  return syn.sign_mtj.state == MtjState::AP ? 1 : 0;
}

WeightLevel read_back(const Synapse& syn) {
  int level = 0;
  while (level < 4 && syn.weight_mtjs[level].state == MtjState::AP) ++level;
  for (int i = level; i < 4; ++i)
    if (syn.weight_mtjs[i].state != MtjState::P)
      fail(ErrorCode::invalid_argument,
           "weight MTJ states are not a canonical configuration");
  return WeightLevel{level, read_sign(syn) ? WeightSign::negative
                                           : WeightSign::positive};
}

int neuron_fire(std::span<const double> psps, const NeuronParams& params) {
  if (psps.empty())
    fail(ErrorCode::disconnected_neuron,
         "neuron has no connected synapses");
  double acc = 0.0;
  for (double v : psps) acc += v;
  if (params.adder_mode == NeuronParams::AdderMode::average)
    acc /= static_cast<double>(psps.size());
  return acc >= params.v_ref ? 1 : 0;
}

}  // namespace spinmem
