/*
 * Copyright 2026 The hwbind Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>

#include "hwbind/error.hpp"
#include "hwbind/sram_sim.hpp"

namespace hwbind {
namespace {

bool is_stable_bias(double b, double eps) {
  return std::abs(b - eps) < 1e-12 || std::abs(b - (1.0 - eps)) < 1e-12;
}

TEST(SramSim, SameSeedSameDevice) {
  EXPECT_EQ(new_device(1, 256, 0.85, 0.001), new_device(1, 256, 0.85, 0.001));
  EXPECT_NE(new_device(1, 256, 0.85, 0.001), new_device(2, 256, 0.85, 0.001));
}

TEST(SramSim, BiasesRespectTheModel) {
  const auto d = new_device(3, 4096, 0.85, 0.001);
  ASSERT_EQ(d.bias().size(), 4096u);
  std::size_t stable = 0, ones = 0;
  for (double b : d.bias()) {
    ASSERT_GE(b, 0.0);
    ASSERT_LE(b, 1.0);
    if (is_stable_bias(b, 0.001)) {
      ++stable;
      if (b > 0.5) ++ones;
    } else {
      EXPECT_GT(b, 0.2 - 1e-9);
      EXPECT_LT(b, 0.8 + 1e-9);
    }
  }
  EXPECT_GE(double(stable) / 4096.0, 0.85);
  // Stable cells split roughly evenly between 0 and 1.
  EXPECT_NEAR(double(ones) / double(stable), 0.5, 0.05);
}

TEST(SramSim, NoiselessDeviceStartsUpIdentically) {
  const auto d = new_device(1, 256, 1.0, 0.0);
  const auto first = startup(d, Temperature::kRoom, 1).bits;
  EXPECT_EQ(first, d.majority_pattern());
  for (Seed s = 2; s < 20; ++s) {
    EXPECT_EQ(startup(d, Temperature::kRoom, s).bits, first);
    EXPECT_EQ(startup(d, Temperature::kHigh, s).bits, first);
  }
}

TEST(SramSim, StartupIsDeterministicInItsSeed) {
  const auto d = new_device(4, 512);
  auto a = startup(d, Temperature::kLow, 77);
  auto b = startup(d, Temperature::kLow, 77);
  EXPECT_EQ(a.bits, b.bits);
  EXPECT_EQ(a.temperature, Temperature::kLow);
  EXPECT_EQ(a.bits.size(), 512u);
  EXPECT_NE(startup(d, Temperature::kLow, 78).bits, a.bits);
}

TEST(SramSim, DistinctSeedsGiveUnrelatedFingerprints) {
  // Over 100 seed pairs the majority patterns differ in 40..60% of cells.
  for (Seed s = 1; s <= 100; ++s) {
    const auto a = new_device(s, 1024).majority_pattern();
    const auto b = new_device(s + 1000, 1024).majority_pattern();
    const double frac = double(hamming_distance(a, b)) / 1024.0;
    EXPECT_GE(frac, 0.4) << "seed " << s;
    EXPECT_LE(frac, 0.6) << "seed " << s;
  }
}

TEST(SramSim, StableCellAt0999IsOneAlmostAlways) {
  // One cell with bias 0.999, 10,000 startups at ROOM.
  DeviceModel d(9, 1.0, 0.001, std::vector<double>(8, 0.999));
  int ones = 0;
  for (Seed s = 0; s < 10000; ++s) ones += startup(d, Temperature::kRoom, s).bits[0];
  EXPECT_GE(ones, 9980);
}

TEST(SramSim, TemperatureTriplesDistanceWithoutFlippingPreference) {
  EXPECT_DOUBLE_EQ(effective_bias(0.999, Temperature::kRoom), 0.999);
  EXPECT_NEAR(effective_bias(0.999, Temperature::kHigh), 0.997, 1e-12);
  EXPECT_NEAR(effective_bias(0.001, Temperature::kLow), 0.003, 1e-12);
  EXPECT_DOUBLE_EQ(effective_bias(0.4, Temperature::kHigh), 0.5);
  EXPECT_DOUBLE_EQ(effective_bias(0.7, Temperature::kLow), 0.5);
  EXPECT_EQ(parse_temperature("room"), Temperature::kRoom);
  EXPECT_EQ(parse_temperature("HIGH"), Temperature::kHigh);
  EXPECT_THROW(parse_temperature("warm"), ParameterError);
}

TEST(SramSim, ConstantCellFractionTracksStableFraction) {
  // With epsilon small enough that a stable cell rarely flips in 1,000
  // startups, the constant fraction sits within 3% of stable_fraction.
  for (double eps : {0.0, 1e-5}) {
    const auto d = new_device(11, 2048, 0.85, eps);
    std::vector<int> ones(2048, 0);
    for (Seed s = 0; s < 1000; ++s) {
      const auto bits = startup(d, Temperature::kRoom, s).bits;
      for (std::size_t i = 0; i < bits.size(); ++i) ones[i] += bits[i];
    }
    std::size_t constant = 0;
    for (int c : ones) constant += (c == 0 || c == 1000);
    EXPECT_NEAR(double(constant) / 2048.0, 0.85, 0.03) << "eps " << eps;
  }
}

TEST(SramSim, StableCellsConcentrate) {
  // Pairwise distance over stable cells stays under 2*e*N + 4*sqrt(var),
  // with var = N * q * (1 - q) and q = 2e(1-e) the per-cell disagreement rate.
  const double eps = 0.001;
  const auto d = new_device(12, 4096, 0.85, eps);
  std::vector<std::size_t> stable;
  for (std::size_t i = 0; i < d.cell_count(); ++i) {
    if (is_stable_bias(d.bias()[i], eps)) stable.push_back(i);
  }
  const double n = double(stable.size());
  const double q = 2 * eps * (1 - eps);
  const double bound = 2 * eps * n + 4 * std::sqrt(n * q * (1 - q));
  for (Seed s = 0; s < 50; ++s) {
    const auto a = startup(d, Temperature::kRoom, 2 * s).bits;
    const auto b = startup(d, Temperature::kRoom, 2 * s + 1).bits;
    std::size_t diff = 0;
    for (auto i : stable) diff += a[i] != b[i];
    EXPECT_LE(double(diff), bound);
  }
}

TEST(SramSim, ClonesShareSpecButNotFingerprint) {
  const auto d = new_device(21, 2048, 0.9, 0.002);
  const auto c1 = clone_device(d, 5);
  EXPECT_EQ(c1, clone_device(d, 5));
  EXPECT_EQ(c1.cell_count(), d.cell_count());
  EXPECT_EQ(c1.stable_fraction(), d.stable_fraction());
  EXPECT_EQ(c1.epsilon(), d.epsilon());
  for (Seed s = 0; s < 100; ++s) {
    const auto c = clone_device(d, s);
    const double frac = double(hamming_distance(c.majority_pattern(), d.majority_pattern())) / 2048.0;
    EXPECT_GE(frac, 0.4);
    EXPECT_LE(frac, 0.6);
  }
}

TEST(SramSim, RejectsBadParameters) {
  EXPECT_THROW(new_device(1, 4), ParameterError);
  EXPECT_THROW(new_device(1, 64, 0.0, 0.001), ParameterError);
  EXPECT_THROW(new_device(1, 64, 1.2, 0.001), ParameterError);
  EXPECT_THROW(new_device(1, 64, 0.8, 0.5), ParameterError);
  EXPECT_THROW(new_device(1, 64, 0.8, -0.1), ParameterError);
  EXPECT_THROW(DeviceModel(1, 0.8, 0.0, {0.5, 1.5}), ParameterError);
}

TEST(SramSim, BiasIsQuantized) {
  EXPECT_DOUBLE_EQ(quantize_bias(0.123456), 0.1235);
  const auto d = new_device(8, 512);
  for (double b : d.bias()) EXPECT_DOUBLE_EQ(b, quantize_bias(b));
}

}  // namespace
}  // namespace hwbind
