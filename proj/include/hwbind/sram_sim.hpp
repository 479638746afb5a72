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

// Statistical model of SRAM power-up values.
//
// Every cell has a bias, the probability that it powers up as 1. A fraction
// of the cells is "stable": their bias sits at epsilon or 1 - epsilon, split
// evenly between the two. The remaining cells get a bias drawn uniformly from
// (0.2, 0.8). Biases are quantized to four decimal places at construction so
// that the JSON fixture form round-trips exactly.
//
// Temperature is a label, not a physical quantity: LOW and HIGH triple each
// cell's distance from its preferred value, ROOM leaves it unchanged.

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "hwbind/bitstring.hpp"
#include "hwbind/random.hpp"

namespace hwbind {

enum class Temperature { kLow, kRoom, kHigh };

std::string_view to_string(Temperature t);
/// Accepts "LOW", "ROOM", "HIGH" (case-insensitive).
Temperature parse_temperature(std::string_view label);

struct DeviceDefaults {
  static constexpr std::size_t kCellCount = 4096;
  static constexpr double kStableFraction = 0.85;
  static constexpr double kEpsilon = 0.001;
};

class DeviceModel {
 public:
  /// Builds a device from raw parts (used by the fixture loader). Biases
  /// must already lie in [0, 1].
  DeviceModel(Seed device_seed, double stable_fraction, double epsilon,
              std::vector<double> bias);

  Seed device_seed() const noexcept { return device_seed_; }
  std::size_t cell_count() const noexcept { return bias_.size(); }
  double stable_fraction() const noexcept { return stable_fraction_; }
  double epsilon() const noexcept { return epsilon_; }
  const std::vector<double>& bias() const noexcept { return bias_; }

  /// Per-cell most likely power-up value (bias >= 0.5).
  BitString majority_pattern() const;

  friend bool operator==(const DeviceModel&, const DeviceModel&) = default;

 private:
  Seed device_seed_;
  double stable_fraction_;
  double epsilon_;
  std::vector<double> bias_;
};

struct StartupSample {
  BitString bits;
  Temperature temperature = Temperature::kRoom;
};

/// Rounds a bias to the fixture resolution of 1e-4.
double quantize_bias(double bias);

DeviceModel new_device(Seed seed,
                       std::size_t cell_count = DeviceDefaults::kCellCount,
                       double stable_fraction = DeviceDefaults::kStableFraction,
                       double epsilon = DeviceDefaults::kEpsilon);

/// Probability that a cell with the given bias powers up as 1 under `t`.
double effective_bias(double bias, Temperature t);

StartupSample startup(const DeviceModel& device, Temperature temperature,
                      Seed noise_seed);

/// Same specification, independently drawn biases.
DeviceModel clone_device(const DeviceModel& device, Seed clone_seed);

}  // namespace hwbind
