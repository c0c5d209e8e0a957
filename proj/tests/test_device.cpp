// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "device.hpp"
#include "error.hpp"

using namespace spinmem;

TEST_CASE("nominal instance carries Table-2 nominals") {
  const DeviceParams params;
  const MtjInstance p = nominal_instance(params, MtjState::P);
  CHECK(p.t_tb_nm == doctest::Approx(0.85));
  CHECK(p.t_fl_nm == doctest::Approx(1.3));
  CHECK(p.tmr_ratio == doctest::Approx(2.49));
  CHECK(p.r_p_ohm == doctest::Approx(1000.0));
  CHECK(p.state == MtjState::P);

  const MtjInstance ap = nominal_instance(params, MtjState::AP);
  CHECK(ap.state == MtjState::AP);
  CHECK(ap.t_tb_nm == p.t_tb_nm);
  CHECK(ap.r_p_ohm == p.r_p_ohm);
}

TEST_CASE("nominal resistance passes through r_p_nominal") {
  DeviceParams params;
  params.r_p_nominal_ohm = 500.0;
  CHECK(nominal_instance(params, MtjState::P).r_p_ohm == doctest::Approx(500.0));
}

TEST_CASE("resistance follows the TMR relation") {
  MtjInstance inst;
  inst.r_p_ohm = 1000.0;
  inst.tmr_ratio = 2.49;
  inst.state = MtjState::P;
  CHECK(resistance(inst) == doctest::Approx(1000.0));
  inst.state = MtjState::AP;
  CHECK(resistance(inst) == doctest::Approx(3490.0));
  inst.tmr_ratio = 0.0;
  CHECK(resistance(inst) == doctest::Approx(1000.0));
}

TEST_CASE("AP/P resistance ratio recovers the TMR ratio") {
  const DeviceParams params;
  RandomEngine rng = make_engine(substream(99, 0));
  for (int i = 0; i < 200; ++i) {
    MtjInstance inst = sample_instance(params, MtjState::P, rng);
    const double rp = resistance(inst);
    const double rap = resistance(set_state(inst, MtjState::AP));
    CHECK(rp > 0.0);
    CHECK(rap > 0.0);
    CHECK(rap / rp - 1.0 == doctest::Approx(inst.tmr_ratio).epsilon(1e-13));
  }
}

TEST_CASE("set_state is an ideal idempotent write") {
  const DeviceParams params;
  const MtjInstance p = nominal_instance(params, MtjState::P);
  const MtjInstance ap = set_state(p, MtjState::AP);
  CHECK(ap.state == MtjState::AP);
  CHECK(ap.t_tb_nm == p.t_tb_nm);
  CHECK(ap.t_fl_nm == p.t_fl_nm);
  CHECK(ap.tmr_ratio == p.tmr_ratio);
  CHECK(ap.r_p_ohm == p.r_p_ohm);

  const MtjInstance again = set_state(ap, MtjState::AP);
  CHECK(again.state == MtjState::AP);
  CHECK(resistance(again) == resistance(ap));
}

TEST_CASE("zero sigmas degenerate to the nominal instance") {
  DeviceParams params;
  params.sigma_t_fl_nm = 0.0;
  params.sigma_t_tb_nm = 0.0;
  params.sigma_tmr = 0.0;
  RandomEngine rng = make_engine(substream(1, 2, 3));
  const MtjInstance sampled = sample_instance(params, MtjState::P, rng);
  const MtjInstance nominal = nominal_instance(params, MtjState::P);
  CHECK(sampled.t_tb_nm == nominal.t_tb_nm);
  CHECK(sampled.t_fl_nm == nominal.t_fl_nm);
  CHECK(sampled.tmr_ratio == nominal.tmr_ratio);
  CHECK(sampled.r_p_ohm == nominal.r_p_ohm);
}

TEST_CASE("sampling statistics match the configured distribution") {
  const DeviceParams params;  // beta = 2 /nm
  RandomEngine rng = make_engine(substream(2024, 0));
  const int draws = 10000;
  double t_tb_sum = 0.0;
  std::vector<double> r_p(draws);
  for (int i = 0; i < draws; ++i) {
    const MtjInstance inst = sample_instance(params, MtjState::P, rng);
    t_tb_sum += inst.t_tb_nm;
    r_p[i] = inst.r_p_ohm;
  }
  // law of large numbers on the mean
  CHECK(t_tb_sum / draws == doctest::Approx(0.85).epsilon(0.01));
  // lognormal r_p: the median equals exp of the Gaussian median
  std::nth_element(r_p.begin(), r_p.begin() + draws / 2, r_p.end());
  CHECK(r_p[draws / 2] == doctest::Approx(1000.0).epsilon(0.02));
}

TEST_CASE("sampling is reproducible bit-for-bit under a fixed seed") {
  const DeviceParams params;
  RandomEngine a = make_engine(substream(5, 1));
  RandomEngine b = make_engine(substream(5, 1));
  for (int i = 0; i < 50; ++i) {
    const MtjInstance x = sample_instance(params, MtjState::AP, a);
    const MtjInstance y = sample_instance(params, MtjState::AP, b);
    CHECK(x.t_tb_nm == y.t_tb_nm);
    CHECK(x.t_fl_nm == y.t_fl_nm);
    CHECK(x.tmr_ratio == y.tmr_ratio);
    CHECK(x.r_p_ohm == y.r_p_ohm);
  }
}

TEST_CASE("invalid device parameters are rejected") {
  DeviceParams params;
  params.t_tb_nm = 0.0;
  CHECK_THROWS_AS((void)nominal_instance(params, MtjState::P), Error);
  params = DeviceParams{};
  params.tmr_ratio = -1.0;
  CHECK_THROWS_AS((void)nominal_instance(params, MtjState::P), Error);
  params = DeviceParams{};
  params.sigma_tmr = -0.1;
  RandomEngine rng = make_engine(1);
  CHECK_THROWS_AS((void)sample_instance(params, MtjState::P, rng), Error);
}
