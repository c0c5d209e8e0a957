// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "network.hpp"

using namespace spinmem;

namespace {

Pattern bipolar(std::initializer_list<int> values) {
  Pattern p;
  for (int v : values) p.values.push_back(static_cast<int8_t>(v));
  return p;
}

Pattern random_pattern(int n, RandomEngine& rng) {
  Pattern p;
  p.values.resize(n);
  for (int8_t& v : p.values) v = (rng() & 1) ? 1 : -1;
  return p;
}

int overlap(const Pattern& a, const Pattern& b) {
  int o = 0;
  for (int i = 0; i < a.size(); ++i) o += a.values[i] * b.values[i];
  return o;
}

}  // namespace

TEST_CASE("training builds the outer-product sum") {
  const Pattern p = bipolar({1, -1});

  const WeightMatrix with_diag = train(std::array{p}, false);
  CHECK(with_diag.at(0, 0) == 1);
  CHECK(with_diag.at(0, 1) == -1);
  CHECK(with_diag.at(1, 0) == -1);
  CHECK(with_diag.at(1, 1) == 1);

  const WeightMatrix no_diag = train(std::array{p}, true);
  CHECK(no_diag.at(0, 0) == 0);
  CHECK(no_diag.at(0, 1) == -1);
  CHECK(no_diag.at(1, 0) == -1);
  CHECK(no_diag.at(1, 1) == 0);

  const WeightMatrix two = train(
      std::array{bipolar({1, 1}), bipolar({-1, -1})}, false);
  CHECK(two.at(0, 1) == 2);
  CHECK(two.at(1, 0) == 2);
  CHECK(two.m == 2);
}

TEST_CASE("training rejects bad inputs") {
  CHECK_THROWS_AS((void)train(std::span<const Pattern>{}, true), Error);
  const std::array patterns{bipolar({1, -1}), bipolar({1, -1, 1})};
  CHECK_THROWS_AS((void)train(patterns, true), Error);
  const std::array bad{Pattern{{1, 0}}};
  CHECK_THROWS_AS((void)train(bad, true), Error);
}

TEST_CASE("trained weights are symmetric with entries bounded by m") {
  RandomEngine rng = make_engine(substream(21, 0));
  for (int round = 0; round < 20; ++round) {
    const int n = 3 + static_cast<int>(uniform_below(rng, 10));
    const int m = 1 + static_cast<int>(uniform_below(rng, 4));
    std::vector<Pattern> patterns;
    for (int k = 0; k < m; ++k) patterns.push_back(random_pattern(n, rng));
    const WeightMatrix weights = train(patterns, round % 2 == 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CHECK(weights.at(i, j) == weights.at(j, i));
        CHECK(std::abs(weights.at(i, j)) <= m);
      }
  }
}

TEST_CASE("quantization maps weights onto levels, zeros disconnect") {
  SUBCASE("unit weights saturate at level 4") {
    const QuantizationMap qmap{1};
    CHECK(!qmap.map(0).has_value());
    CHECK(qmap.map(1) == WeightLevel{4, WeightSign::positive});
    CHECK(qmap.map(-1) == WeightLevel{4, WeightSign::negative});
  }
  SUBCASE("linear rescale at w_max = 5") {
    const QuantizationMap qmap{5};
    CHECK(qmap.map(3) == WeightLevel{2, WeightSign::positive});
    CHECK(qmap.map(-5) == WeightLevel{4, WeightSign::negative});
    CHECK(qmap.map(1) == WeightLevel{0, WeightSign::positive});
  }
  SUBCASE("monotone in magnitude, sign preserving") {
    RandomEngine rng = make_engine(substream(22, 1));
    for (int round = 0; round < 50; ++round) {
      const int w_max = 1 + static_cast<int>(uniform_below(rng, 9));
      const QuantizationMap qmap{w_max};
      int prev = -1;
      for (int w = 1; w <= w_max; ++w) {
        const auto pos = qmap.map(w);
        const auto neg = qmap.map(-w);
        REQUIRE(pos.has_value());
        REQUIRE(neg.has_value());
        CHECK(pos->sign == WeightSign::positive);
        CHECK(neg->sign == WeightSign::negative);
        CHECK(pos->level == neg->level);
        CHECK(pos->level >= prev);
        prev = pos->level;
      }
      CHECK(prev == 4);  // the largest magnitude uses the top level
    }
  }
}

TEST_CASE("quantize programs the grid and reads back exactly") {
  RandomEngine rng = make_engine(substream(23, 2));
  std::vector<Pattern> patterns{random_pattern(12, rng),
                                random_pattern(12, rng),
                                random_pattern(12, rng)};
  const WeightMatrix weights = train(patterns, true);
  const HardwareNetwork net = quantize(weights, HardwareOptions{});
  for (int i = 0; i < weights.n; ++i)
    for (int j = 0; j < weights.n; ++j) {
      const auto expected = net.quantization().map(weights.at(i, j));
      CHECK(net.connected(i, j) == expected.has_value());
      if (expected) {
        CHECK(net.level_at(i, j) == *expected);
        CHECK(read_back(net.synapse(i, j)) == *expected);
      }
    }
}

TEST_CASE("software step follows the synchronous threshold rule") {
  WeightMatrix weights;
  weights.n = 2;
  weights.m = 1;
  weights.w = {0, -1, -1, 0};

  CHECK(step_software(weights, bipolar({1, -1}), 0.0) == bipolar({1, -1}));
  CHECK(step_software(weights, bipolar({1, 1}), 0.0) == bipolar({-1, -1}));

  // x_j = 0 ties to +1
  WeightMatrix zero;
  zero.n = 2;
  zero.m = 1;
  zero.w = {0, 0, 0, 0};
  CHECK(step_software(zero, bipolar({-1, -1}), 0.0) == bipolar({1, 1}));
}

TEST_CASE("hardware step keeps stored patterns fixed") {
  const Pattern p = bipolar({1, -1, 1, -1, 1, -1, 1, 1, -1, -1});
  const WeightMatrix weights = train(std::array{p}, true);
  const HardwareNetwork net = quantize(weights, HardwareOptions{});
  const std::vector<uint8_t> bits = to_bits(p);
  CHECK(step_hardware(net, bits) == bits);
}

TEST_CASE("all-positive weights with all-ones input stay all ones") {
  WeightMatrix weights;
  weights.n = 4;
  weights.m = 1;
  weights.w.assign(16, 1);
  for (int i = 0; i < 4; ++i) weights.at(i, i) = 0;
  const HardwareNetwork net = quantize(weights, HardwareOptions{});
  const std::vector<uint8_t> ones(4, 1);
  CHECK(step_hardware(net, ones) == ones);
}

TEST_CASE("hardware and software steps agree on uniform-magnitude weights") {
  // exhaustive: every symmetric +-1 off-diagonal matrix at n = 4, all 16 inputs
  for (int mask = 0; mask < 64; ++mask) {
    WeightMatrix weights;
    weights.n = 4;
    weights.m = 1;
    weights.w.assign(16, 0);
    int bit = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j, ++bit) {
        const int32_t w = (mask >> bit) & 1 ? 1 : -1;
        weights.at(i, j) = w;
        weights.at(j, i) = w;
      }
    const HardwareNetwork net = quantize(weights, HardwareOptions{});
    for (int input = 0; input < 16; ++input) {
      Pattern y;
      for (int i = 0; i < 4; ++i)
        y.values.push_back((input >> i) & 1 ? 1 : -1);
      const Pattern sw = step_software(weights, y, 0.0);
      const Pattern hw = from_bits(step_hardware(net, to_bits(y)));
      CHECK(sw == hw);
    }
  }
}

TEST_CASE("a fully disconnected column is a disconnected-neuron error") {
  WeightMatrix weights;
  weights.n = 2;
  weights.m = 1;
  weights.w = {0, 1, 1, 0};
  weights.at(0, 1) = 0;
  weights.at(1, 0) = 0;  // column 0 and 1 both empty now
  const HardwareNetwork net = quantize(weights, HardwareOptions{});
  CHECK_THROWS_AS((void)step_hardware(net, {1, 0}), Error);
}

TEST_CASE("stored patterns are fixed points of recall") {
  RandomEngine rng = make_engine(substream(31, 5));
  const Pattern p = random_pattern(24, rng);
  const WeightMatrix weights = train(std::array{p}, true);
  const RecallResult r = recall_software(weights, p, 100);
  CHECK(r.converged);
  CHECK(!r.two_cycle);
  CHECK(r.iterations <= 1);
  CHECK(r.final == p);

  const HardwareNetwork net = quantize(weights, HardwareOptions{});
  const RecallResult rh = recall_hardware(net, p, 100);
  CHECK(rh.converged);
  CHECK(rh.final == p);
}

TEST_CASE("single-pattern network corrects any single flipped bit (n = 10)") {
  RandomEngine rng = make_engine(substream(31, 6));
  const Pattern p = random_pattern(10, rng);
  const WeightMatrix weights = train(std::array{p}, true);
  const HardwareNetwork net = quantize(weights, HardwareOptions{});
  for (int flip = 0; flip < 10; ++flip) {
    Pattern noisy = p;
    noisy.values[flip] = static_cast<int8_t>(-noisy.values[flip]);
    const RecallResult sw = recall_software(weights, noisy, 100);
    CHECK(sw.converged);
    CHECK(sw.final == p);
    const RecallResult hw = recall_hardware(net, noisy, 100);
    CHECK(hw.converged);
    CHECK(hw.final == p);
  }
}

TEST_CASE("low-overlap patterns at n = 100 are all fixed points") {
  RandomEngine rng = make_engine(substream(31, 7));
  std::vector<Pattern> patterns;
  while (patterns.size() < 3) {
    Pattern candidate = random_pattern(100, rng);
    bool ok = true;
    for (const Pattern& other : patterns)
      if (std::abs(overlap(candidate, other)) > 20) ok = false;
    if (ok) patterns.push_back(std::move(candidate));
  }
  const WeightMatrix weights = train(patterns, true);
  for (const Pattern& p : patterns)
    CHECK(step_software(weights, p, 0.0) == p);
}

TEST_CASE("synchronous recall reports two-cycles") {
  WeightMatrix weights;
  weights.n = 2;
  weights.m = 1;
  weights.w = {0, -1, -1, 0};
  const RecallResult r = recall_software(weights, bipolar({1, 1}), 100);
  CHECK(r.two_cycle);
  CHECK(!r.converged);
  CHECK(r.iterations == 2);
}

TEST_CASE("recall always exits converged, two-cycle, or cut off") {
  RandomEngine rng = make_engine(substream(31, 8));
  for (int round = 0; round < 40; ++round) {
    const int n = 4 + static_cast<int>(uniform_below(rng, 12));
    std::vector<Pattern> patterns;
    const int m = 1 + static_cast<int>(uniform_below(rng, 3));
    for (int k = 0; k < m; ++k) patterns.push_back(random_pattern(n, rng));
    const WeightMatrix weights = train(patterns, true);
    const int max_iters = 1 + static_cast<int>(uniform_below(rng, 6));
    const RecallResult r =
        recall_software(weights, random_pattern(n, rng), max_iters);
    CHECK(!(r.converged && r.two_cycle));
    if (!r.converged && !r.two_cycle) CHECK(r.iterations == max_iters);
  }
}

TEST_CASE("recall rejects max_iters < 1") {
  const Pattern p = bipolar({1, -1});
  const WeightMatrix weights = train(std::array{p}, true);
  CHECK_THROWS_AS((void)recall_software(weights, p, 0), Error);
}
