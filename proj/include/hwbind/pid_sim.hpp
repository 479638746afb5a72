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

// Discrete PID controller around a first-order-lag plant.

#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "hwbind/tobin.hpp"

namespace hwbind {

struct PidConfig {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double dt = 0.005;
  double set_point = 1.0;
  double safe_lower = -30.0;
  double safe_upper = 30.0;

  PidConfig with_gains(const ParamTriple& t) const {
    PidConfig c = *this;
    c.kp = t.kp;
    c.ki = t.ki;
    c.kd = t.kd;
    return c;
  }
};

enum class PidMode { kInit, kExecute };

struct PidState {
  double previous_integral = 0.0;
  double previous_error = 0.0;
  PidMode mode = PidMode::kInit;
};

/// The init branch: zero the memory and switch to execute.
PidState pid_init(PidState state);

struct PidStepResult {
  PidState state;
  double output = 0.0;
};

/// One execute-branch step. Throws StateError in init mode.
PidStepResult pid_step(const PidState& state, const PidConfig& cfg, double measured_value);

/// measured += (gain * output - measured) * dt / tau
struct PlantModel {
  double gain = 0.05;
  double tau = 0.2;
  double measured = 0.0;

  double update(double output, double dt);
};

inline constexpr std::size_t kNotSettled = std::numeric_limits<std::size_t>::max();
inline constexpr double kSettlingBand = 0.02;
inline constexpr std::size_t kDefaultHorizon = 5000;

struct PidSample {
  double t = 0.0;
  double measured = 0.0;
  double output = 0.0;
  double error = 0.0;
};

struct PidMetrics {
  /// First sample index from which |error| stays within 2% of |setPoint|
  /// through the end of the trace; kNotSettled if the last sample is outside.
  std::size_t settling_steps = kNotSettled;
  double overshoot_ratio = 0.0;
  double integral_squared_error = 0.0;
};

struct PidTrace {
  std::vector<PidSample> samples;
  PidMetrics metrics;
};

PidMetrics compute_metrics(const std::vector<PidSample>& samples, const PidConfig& cfg);

PidTrace simulate(PlantModel plant, const PidConfig& cfg, std::size_t steps);

/// CSV with header "t,measured,output,error", six significant digits.
std::string trace_csv(const PidTrace& trace);

struct TripleReport {
  ParamTriple triple;
  PidMetrics metrics;
};

struct TableReport {
  std::vector<TripleReport> rows;  // same order as the table
  bool pass = false;
  std::vector<std::string> problems;
};

/// The optimal triple must settle strictly faster than every alternative
/// and every alternative must settle within `horizon` steps.
TableReport validate_table(const PlantModel& plant, const ParamTable& table,
                           const PidConfig& base, std::size_t horizon = kDefaultHorizon);

/// Demo fixture: first-order lag and clamp limits under which the gains
/// (800, 1000, 30) are the fastest entry of demo_table().
PlantModel demo_plant();
PidConfig demo_config();
ParamTable demo_table();

}  // namespace hwbind
