// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "rng.hpp"

namespace spinmem {

// Magnetization of the free layer relative to the pinned layer. P is the
// low-resistance state (logic 0), AP the high-resistance state (logic 1).
enum class MtjState : uint8_t { P = 0, AP = 1 };

struct DeviceParams {
  double t_fl_nm = 1.3;            // free-layer thickness
  double sigma_t_fl_nm = 0.039;    // 3% of nominal
  double cd_nm = 32.0;             // critical diameter, no published spread
  double t_tb_nm = 0.85;           // tunnel-barrier thickness
  double sigma_t_tb_nm = 0.0255;   // 3% of nominal
  double tmr_ratio = 2.49;         // (R_AP - R_P) / R_P
  double sigma_tmr = 0.0747;       // 3% of nominal
  double r_p_nominal_ohm = 1000.0;
  // Exponential sensitivity of R_P to barrier-thickness deviation:
  // R_P = R_P0 * exp(beta * (t_TB - t_TB0)).
  double barrier_sensitivity_per_nm = 2.0;

  double r_ap_nominal_ohm() const {
    return r_p_nominal_ohm * (1.0 + tmr_ratio);
  }
  void validate() const;
};

// One physical MTJ: its sampled geometry plus the binary magnetic state.
// Immutable value; writes produce a new instance.
struct MtjInstance {
  MtjState state = MtjState::P;
  double t_tb_nm = 0.0;
  double t_fl_nm = 0.0;
  double tmr_ratio = 0.0;
  double r_p_ohm = 0.0;
};

// Zero-variation construction: all sampled fields at their nominals.
MtjInstance nominal_instance(const DeviceParams& params, MtjState state);

// Gaussian process-variation draw of t_TB, t_FL and TMR. Non-positive draws
// are rejected and redrawn. t_FL is recorded but has no electrical effect
// here; its physical role is switching dynamics, which this model excludes.
MtjInstance sample_instance(const DeviceParams& params, MtjState state,
                            RandomEngine& rng);

// R_P in the P state, R_P * (1 + TMR) in the AP state.
double resistance(const MtjInstance& inst);

// Ideal, idempotent state write; physical fields unchanged.
MtjInstance set_state(MtjInstance inst, MtjState target);

}  // namespace spinmem
