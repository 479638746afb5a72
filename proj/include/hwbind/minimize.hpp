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

// Two-level minimization of SOP expressions.
//
// Up to kExactMinimizeMaxVars variables: all prime implicants by
// Quine-McCluskey merging, essential primes first, then a greedy cover and a
// redundancy sweep. Above that: expand / irredundant / reduce iterations in
// the style of ESPRESSO, starting from the input cubes.
//
// The result is always truth-table equal to the input and never has more
// literals; minimality is best-effort.

#pragma once

#include <cstdint>
#include <vector>

#include "hwbind/sop.hpp"

namespace hwbind {

inline constexpr unsigned kExactMinimizeMaxVars = 12;

/// All prime implicants of the function given by `onset` (2^k entries).
std::vector<Cube> prime_implicants(const std::vector<std::uint8_t>& onset, unsigned k);

SopExpr minimize_expr(const SopExpr& expr, unsigned k);

/// Heuristic path regardless of k (exposed for testing).
SopExpr minimize_expr_heuristic(const SopExpr& expr, unsigned k);

SopExprList minimize(const SopExprList& exprs);

}  // namespace hwbind
