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

#include "hwbind/attack.hpp"

#include <algorithm>

#include "hwbind/error.hpp"

namespace hwbind {

std::set<ParamTriple> enumerate_triples(const SopExprList& exprs, const ToBinTable& tb) {
  std::set<ParamTriple> out;
  const std::uint32_t total = std::uint32_t{1} << exprs.k;
  for (std::uint32_t x = 0; x < total; ++x) out.insert(decode(tb, eval_index(exprs, x)));
  return out;
}

AttackReport static_enumerate(const ProtectedBundle& bundle) {
  AttackReport report;
  report.scenario = AttackScenario::kStatic;
  report.s_prime = enumerate_triples(bundle.phi_prime, bundle.tobin);
  report.effort.expression_evaluations = std::size_t{1} << bundle.k;
  return report;
}

AttackReport clone_dynamic_attack(const ProtectedBundle& bundle,
                                  const std::optional<SopExprList>& leaked_phi,
                                  const PlantModel& plant, const PidConfig& base,
                                  std::size_t horizon) {
  if (!leaked_phi) {
    throw PreconditionError("clone dynamic attack needs the plaintext expressions");
  }
  if (leaked_phi->k != bundle.k || expr_hash(*leaked_phi) != bundle.hash_value) {
    throw PreconditionError("leaked expressions do not match the bundle hash");
  }

  AttackReport report;
  report.scenario = AttackScenario::kCloneDynamic;
  report.s = enumerate_triples(*leaked_phi, bundle.tobin);
  report.s_prime = enumerate_triples(bundle.phi_prime, bundle.tobin);
  report.effort.expression_evaluations = 2 * (std::size_t{1} << bundle.k);
  std::set_difference(report.s.begin(), report.s.end(), report.s_prime.begin(),
                      report.s_prime.end(),
                      std::inserter(report.difference, report.difference.end()));

  for (const auto& candidate : report.difference) {
    const auto steps = simulate(plant, base.with_gains(candidate), horizon).metrics.settling_steps;
    ++report.effort.simulations;
    if (steps == kNotSettled) continue;
    if (!report.best_settling_steps || steps < *report.best_settling_steps) {
      report.best_settling_steps = steps;
      report.best_triple = candidate;
    }
  }
  return report;
}

}  // namespace hwbind
