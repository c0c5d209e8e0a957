// SPDX-License-Identifier: Apache-2.0
#include "device.hpp"

#include <cmath>

#include "error.hpp"

namespace spinmem {

void DeviceParams::validate() const {
  if (!(t_fl_nm > 0.0) || !(cd_nm > 0.0) || !(t_tb_nm > 0.0))
    fail(ErrorCode::invalid_argument, "device geometry must be positive");
  if (!(tmr_ratio > 0.0))
    fail(ErrorCode::invalid_argument, "tmr_ratio must be positive");
  if (!(r_p_nominal_ohm > 0.0))
    fail(ErrorCode::invalid_argument, "r_p_nominal_ohm must be positive");
  if (sigma_t_fl_nm < 0.0 || sigma_t_tb_nm < 0.0 || sigma_tmr < 0.0)
    fail(ErrorCode::invalid_argument, "sigmas must be non-negative");
  if (!std::isfinite(barrier_sensitivity_per_nm))
    fail(ErrorCode::invalid_argument, "barrier sensitivity must be finite");
}

MtjInstance nominal_instance(const DeviceParams& params, MtjState state) {
  params.validate();
  return MtjInstance{state, params.t_tb_nm, params.t_fl_nm, params.tmr_ratio,
                     params.r_p_nominal_ohm};
}

namespace {

// Gaussian clamped to (0, inf) by resampling. With 3% sigmas a non-positive
// draw is a >30-sigma event, so the loop is effectively a single draw.
double positive_normal(RandomEngine& rng, double mean, double sigma) {
  if (sigma == 0.0) return mean;
  for (;;) {
    const double x = normal(rng, mean, sigma);
    if (x > 0.0) return x;
  }
}

}  // namespace

MtjInstance sample_instance(const DeviceParams& params, MtjState state,
                            RandomEngine& rng) {
  params.validate();
  MtjInstance inst;
  inst.state = state;
  inst.t_tb_nm = positive_normal(rng, params.t_tb_nm, params.sigma_t_tb_nm);
  inst.t_fl_nm = positive_normal(rng, params.t_fl_nm, params.sigma_t_fl_nm);
  inst.tmr_ratio = positive_normal(rng, params.tmr_ratio, params.sigma_tmr);
  inst.r_p_ohm =
      params.r_p_nominal_ohm *
      std::exp(params.barrier_sensitivity_per_nm *
               (inst.t_tb_nm - params.t_tb_nm));
  return inst;
}

double resistance(const MtjInstance& inst) {
  return inst.state == MtjState::P ? inst.r_p_ohm
                                   : inst.r_p_ohm * (1.0 + inst.tmr_ratio);
}

MtjInstance set_state(MtjInstance inst, MtjState target) {
  inst.state = target;
  return inst;
}

}  // namespace spinmem
