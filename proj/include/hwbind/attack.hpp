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

// Attacker models used as security regressions.
//
// static: the attacker holds only the bundle, so the best they can do is
// enumerate phi' over all 2^k assignments (set S').
//
// clone_dynamic: the attacker additionally holds phi (a leaked key) and a
// clone. They enumerate phi as well (set S), then try every triple in
// S \ S' on a replica plant and keep the fastest-settling one.

#pragma once

#include <cstddef>
#include <optional>
#include <set>

#include "hwbind/bind.hpp"
#include "hwbind/pid_sim.hpp"

namespace hwbind {

enum class AttackScenario { kStatic, kCloneDynamic };

struct AttackEffort {
  std::size_t expression_evaluations = 0;
  std::size_t simulations = 0;
};

struct AttackReport {
  AttackScenario scenario = AttackScenario::kStatic;
  std::set<ParamTriple> s;           // from phi; empty in the static scenario
  std::set<ParamTriple> s_prime;     // from phi'
  std::set<ParamTriple> difference;  // S \ S'
  std::optional<ParamTriple> best_triple;
  std::optional<std::size_t> best_settling_steps;
  AttackEffort effort;
};

/// Decodes eval(exprs, x) for all 2^k assignments.
std::set<ParamTriple> enumerate_triples(const SopExprList& exprs, const ToBinTable& tb);

AttackReport static_enumerate(const ProtectedBundle& bundle);

/// Throws PreconditionError when `leaked_phi` is absent or does not match
/// the bundle's hash.
AttackReport clone_dynamic_attack(const ProtectedBundle& bundle,
                                  const std::optional<SopExprList>& leaked_phi,
                                  const PlantModel& plant, const PidConfig& base,
                                  std::size_t horizon = kDefaultHorizon);

}  // namespace hwbind
