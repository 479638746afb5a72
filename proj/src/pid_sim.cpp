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

#include "hwbind/pid_sim.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hwbind/error.hpp"

namespace hwbind {

PidState pid_init(PidState state) {
  state.previous_integral = 0.0;
  state.previous_error = 0.0;
  state.mode = PidMode::kExecute;
  return state;
}

PidStepResult pid_step(const PidState& state, const PidConfig& cfg, double measured_value) {
  if (state.mode != PidMode::kExecute) throw StateError("pid_step called before init");
  const double error = cfg.set_point - measured_value;
  const double p = error;
  const double i = state.previous_integral + error * cfg.dt;
  const double d = (error - state.previous_error) / cfg.dt;
  const double output = cfg.kp * p + cfg.ki * i + cfg.kd * d;

  PidStepResult r;
  if (cfg.safe_lower <= output && output <= cfg.safe_upper) {
    r.output = output;
  } else if (cfg.safe_lower > output) {
    r.output = cfg.safe_lower;
  } else {
    // output > safe_upper, or NaN
    r.output = cfg.safe_upper;
  }
  r.state = state;
  r.state.previous_integral = i;
  r.state.previous_error = error;
  return r;
}

double PlantModel::update(double output, double dt) {
  measured += (gain * output - measured) * dt / tau;
  return measured;
}

PidMetrics compute_metrics(const std::vector<PidSample>& samples, const PidConfig& cfg) {
  PidMetrics m;
  const double band = kSettlingBand * std::abs(cfg.set_point);
  std::size_t settle = samples.size();
  for (std::size_t i = samples.size(); i > 0; --i) {
    if (!(std::abs(samples[i - 1].error) <= band)) break;
    settle = i - 1;
  }
  m.settling_steps = (samples.empty() || settle == samples.size()) ? kNotSettled : settle;

  double max_excess = 0.0;
  for (const auto& s : samples) {
    m.integral_squared_error += s.error * s.error * cfg.dt;
    const double excess = cfg.set_point >= 0 ? s.measured - cfg.set_point
                                             : cfg.set_point - s.measured;
    max_excess = std::max(max_excess, excess);
  }
  m.overshoot_ratio = cfg.set_point != 0.0 ? max_excess / std::abs(cfg.set_point) : 0.0;
  return m;
}

PidTrace simulate(PlantModel plant, const PidConfig& cfg, std::size_t steps) {
  if (steps < 1) throw ParameterError("simulation needs at least one step");
  if (!(cfg.dt > 0.0)) throw ParameterError("dt must be positive");
  if (cfg.safe_lower > cfg.safe_upper) throw ParameterError("safe range is inverted");
  if (!(plant.tau > 0.0)) throw ParameterError("plant tau must be positive");

  PidTrace trace;
  trace.samples.reserve(steps);
  PidState state = pid_init(PidState{});
  for (std::size_t s = 0; s < steps; ++s) {
    const double measured = plant.measured;
    auto step = pid_step(state, cfg, measured);
    state = step.state;
    trace.samples.push_back({static_cast<double>(s) * cfg.dt, measured, step.output,
                             state.previous_error});
    plant.update(step.output, cfg.dt);
  }
  trace.metrics = compute_metrics(trace.samples, cfg);
  return trace;
}

std::string trace_csv(const PidTrace& trace) {
  std::ostringstream os;
  os << "t,measured,output,error\n";
  char line[128];
  for (const auto& s : trace.samples) {
    std::snprintf(line, sizeof line, "%.6g,%.6g,%.6g,%.6g\n", s.t, s.measured, s.output, s.error);
    os << line;
  }
  return os.str();
}

TableReport validate_table(const PlantModel& plant, const ParamTable& table,
                           const PidConfig& base, std::size_t horizon) {
  TableReport report;
  for (const auto& t : table.triples()) {
    report.rows.push_back({t, simulate(plant, base.with_gains(t), horizon).metrics});
  }
  const auto optimal_steps = report.rows.front().metrics.settling_steps;
  if (optimal_steps == kNotSettled) {
    report.problems.push_back("optimal triple " + to_string(table.optimal()) +
                              " does not settle within the horizon");
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    if (row.metrics.settling_steps == kNotSettled) {
      report.problems.push_back("alternative " + to_string(row.triple) +
                                " does not settle within the horizon");
    } else if (row.metrics.settling_steps <= optimal_steps) {
      report.problems.push_back("alternative " + to_string(row.triple) +
                                " settles no slower than the optimal triple");
    }
  }
  report.pass = report.problems.empty();
  return report;
}

PlantModel demo_plant() { return PlantModel{0.05, 0.2, 0.0}; }

PidConfig demo_config() { return PidConfig{}; }

ParamTable demo_table() {
  return ParamTable({{800, 1000, 30},
                     {400, 500, 15},
                     {200, 250, 10},
                     {100, 120, 5},
                     {1200, 600, 60},
                     {60, 80, 2}});
}

}  // namespace hwbind
