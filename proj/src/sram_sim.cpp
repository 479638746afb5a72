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

#include "hwbind/sram_sim.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "hwbind/error.hpp"

namespace hwbind {

std::string_view to_string(Temperature t) {
  switch (t) {
    case Temperature::kLow:
      return "LOW";
    case Temperature::kRoom:
      return "ROOM";
    case Temperature::kHigh:
      return "HIGH";
  }
  return "ROOM";
}

Temperature parse_temperature(std::string_view label) {
  std::string upper(label);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "LOW") return Temperature::kLow;
  if (upper == "ROOM") return Temperature::kRoom;
  if (upper == "HIGH") return Temperature::kHigh;
  throw ParameterError("unknown temperature label '" + std::string(label) + "'");
}

double quantize_bias(double bias) {
  return std::round(bias * 10000.0) / 10000.0;
}

DeviceModel::DeviceModel(Seed device_seed, double stable_fraction, double epsilon,
                         std::vector<double> bias)
    : device_seed_(device_seed),
      stable_fraction_(stable_fraction),
      epsilon_(epsilon),
      bias_(std::move(bias)) {
  for (double b : bias_) {
    if (!(b >= 0.0 && b <= 1.0)) throw ParameterError("cell bias outside [0, 1]");
  }
}

BitString DeviceModel::majority_pattern() const {
  BitString out(bias_.size());
  for (std::size_t i = 0; i < bias_.size(); ++i) out.set(i, bias_[i] >= 0.5);
  return out;
}

namespace {

void check_device_parameters(std::size_t cell_count, double stable_fraction,
                             double epsilon) {
  if (cell_count < 8) throw ParameterError("cell_count must be at least 8");
  if (!(stable_fraction > 0.0 && stable_fraction <= 1.0)) {
    throw ParameterError("stable_fraction must lie in (0, 1]");
  }
  if (!(epsilon >= 0.0 && epsilon < 0.5)) {
    throw ParameterError("epsilon must lie in [0, 0.5)");
  }
}

DeviceModel draw_device(Seed seed, std::size_t cell_count, double stable_fraction,
                        double epsilon) {
  check_device_parameters(cell_count, stable_fraction, epsilon);
  Rng rng(derive_seed(seed, "sram.device"));

  // Exactly ceil(f * N) stable cells so the fraction is never below f.
  const auto stable_count = std::min(
      cell_count,
      static_cast<std::size_t>(std::ceil(stable_fraction * static_cast<double>(cell_count) - 1e-9)));

  std::vector<std::size_t> order(cell_count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = cell_count - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(i + 1)]);
  }

  const double eps = quantize_bias(epsilon);
  std::vector<double> bias(cell_count);
  for (std::size_t j = 0; j < cell_count; ++j) {
    const std::size_t cell = order[j];
    if (j < stable_count) {
      bias[cell] = (rng.next() & 1U) ? 1.0 - eps : eps;
    } else {
      // Strictly inside (0.2, 0.8) after quantization.
      double b = quantize_bias(0.2 + 0.6 * rng.uniform01());
      bias[cell] = std::clamp(b, 0.2001, 0.7999);
    }
  }
  return DeviceModel(seed, stable_fraction, epsilon, std::move(bias));
}

}  // namespace

DeviceModel new_device(Seed seed, std::size_t cell_count, double stable_fraction,
                       double epsilon) {
  return draw_device(seed, cell_count, stable_fraction, epsilon);
}

double effective_bias(double bias, Temperature t) {
  if (t == Temperature::kRoom) return bias;
  // Triple the distance from the preferred value, never crossing 0.5 so the
  // cell keeps its majority value.
  if (bias < 0.5) return std::min(3.0 * bias, 0.5);
  if (bias > 0.5) return std::max(1.0 - 3.0 * (1.0 - bias), 0.5);
  return 0.5;
}

StartupSample startup(const DeviceModel& device, Temperature temperature,
                      Seed noise_seed) {
  Rng rng(derive_seed(derive_seed(device.device_seed(), "sram.startup", noise_seed),
                      to_string(temperature)));
  const auto& bias = device.bias();
  StartupSample sample{BitString(bias.size()), temperature};
  for (std::size_t i = 0; i < bias.size(); ++i) {
    sample.bits.set(i, rng.uniform01() < effective_bias(bias[i], temperature));
  }
  return sample;
}

DeviceModel clone_device(const DeviceModel& device, Seed clone_seed) {
  Seed seed = derive_seed(device.device_seed(), "sram.clone", clone_seed);
  return draw_device(seed, device.cell_count(), device.stable_fraction(),
                     device.epsilon());
}

}  // namespace hwbind
