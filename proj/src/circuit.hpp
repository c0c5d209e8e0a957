// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <span>

#include "device.hpp"

namespace spinmem {

// Converter output rail: exactly -VDD or +VDD, with VDD normalized to 1.
class BipolarVolt {
 public:
  static BipolarVolt plus() { return BipolarVolt(+1.0); }
  static BipolarVolt minus() { return BipolarVolt(-1.0); }
  double value() const { return value_; }

 private:
  explicit BipolarVolt(double v) : value_(v) {}
  double value_;
};

enum class WeightSign : uint8_t { positive = 0, negative = 1 };

// One of the five programmable synaptic strengths. Level 0 is the all-P
// (4 R_P) configuration, level 4 the all-AP (4 R_AP) one.
struct WeightLevel {
  int level = 0;
  WeightSign sign = WeightSign::positive;
  bool operator==(const WeightLevel&) const = default;
};

inline constexpr int kWeightLevels = 5;

// 2x2 weight MTJ matrix plus the sign MTJ and the series fixed resistor.
// weight_mtjs[0..3] are R1..R4; R1+R3 form one divider branch, R2+R4 the
// other, so the canonical fill order alternates APs between branches.
struct Synapse {
  std::array<MtjInstance, 4> weight_mtjs;
  MtjInstance sign_mtj;
  double r_fixed_ohm = 0.0;
};

struct NeuronParams {
  enum class AdderMode : uint8_t { sum = 0, average = 1 };
  double v_ref = 0.0;
  AdderMode adder_mode = AdderMode::sum;
};

// Paper-stated optimum for output swing: halfway between R_P and R_AP.
double default_r_fixed_ohm(const DeviceParams& params);

// Synapse built from nominal devices and programmed to the given weight.
Synapse nominal_synapse(const DeviceParams& params, WeightLevel weight,
                        double r_fixed_ohm);

// Process-variation synapse: the four weight MTJs are sampled independently;
// the sign MTJ stays nominal (it does not enter the divider fraction). The
// fixed resistor is not an MTJ and carries no variation.
Synapse sample_synapse(const DeviceParams& params, WeightLevel weight,
                       double r_fixed_ohm, RandomEngine& rng);

// Binary-to-bipolar conversion: +1 exactly when v_in and v_ws differ.
// v_ws = 0 encodes a positive weight, so an active input yields +1.
BipolarVolt convert(int v_in, int v_ws);

// Voltage-divider transfer ratio of the synapse in associative-memory mode:
// (R1+R3)(R2+R4) / (R_fixed*(R1+R2+R3+R4) + (R1+R3)(R2+R4)).
double divider_fraction(const Synapse& syn);

// Postsynaptic potential: divider fraction times the converter rail.
double psp(const Synapse& syn, BipolarVolt v_conv);

// Functional model of configuration mode: write the canonical MTJ states for
// the weight level (APs fill R1..R4 in index order) and the sign MTJ.
Synapse program_weight(Synapse syn, WeightLevel weight);

// Sense-amplifier read of the sign MTJ: 0 = positive weight, 1 = negative.
int read_sign(const Synapse& syn);

// Recover (level, sign) from the programmed states. Fails if the weight MTJ
// states are not one of the five canonical configurations.
WeightLevel read_back(const Synapse& syn);

// Threshold activation: 1 if the adder output is >= v_ref, else 0. Ties fire.
int neuron_fire(std::span<const double> psps, const NeuronParams& params);

}  // namespace spinmem
