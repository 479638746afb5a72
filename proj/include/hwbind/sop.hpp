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

// Sum-of-products encoding of a parameter table.
//
// A table T of m + 1 triples and a partition A_0..A_m of {0,1}^k define
//
//   f(x)  = toBin(T[i])                    for x in A_i
//   f'(x) = f(x)        if x in A_1..A_c
//           toBin(T[c]) if x in A_0 or A_{c+1}..A_m
//
// Each output bit of f (and f') becomes one SOP expression over x_0..x_{k-1}.
// f' never yields T[0], whatever the assignment.

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hwbind/bitstring.hpp"
#include "hwbind/partition.hpp"
#include "hwbind/tobin.hpp"

namespace hwbind {

/// Map {0,1}^k -> {0,1}^width; rows indexed by assignment_index().
struct TruthTable {
  unsigned k = 0;
  unsigned width = 0;
  std::vector<BitString> rows;

  const BitString& operator()(std::uint32_t x) const { return rows.at(x); }
  friend bool operator==(const TruthTable&, const TruthTable&) = default;
};

struct EncodingTables {
  TruthTable f;
  TruthTable f_prime;
};

/// Which classes keep their own triple under f'.
///
/// kDefinition: A_1..A_c keep f; A_0 and A_{c+1}..A_m map to T[c].
/// kWorkedExample: A_{m-c+1}..A_m keep f; every other class, A_0 included,
/// maps to T[m-c+1]. This is kDefinition with the alternatives numbered from
/// the end of the table, and reproduces the printed k=3 example.
/// Both keep c alternatives reachable and T[0] unreachable.
enum class FallbackRule { kDefinition, kWorkedExample };

EncodingTables derive_truth_tables(const ParamTable& table, const Partition& part,
                                   const ToBinTable& tb, std::size_t c,
                                   FallbackRule rule = FallbackRule::kDefinition);

/// Product term. Bit j of `care` says x_j appears; bit j of `polarity`
/// says it appears un-negated. polarity is always a subset of care.
struct Cube {
  std::uint32_t care = 0;
  std::uint32_t polarity = 0;

  bool covers(std::uint32_t x) const noexcept { return (x & care) == polarity; }
  unsigned literals() const noexcept { return static_cast<unsigned>(std::popcount(care)); }

  friend bool operator==(const Cube&, const Cube&) = default;
  friend auto operator<=>(const Cube&, const Cube&) = default;
};

/// A disjunction of cubes; the empty sum is constant 0.
using SopExpr = std::vector<Cube>;

struct SopExprList {
  unsigned k = 0;
  std::vector<SopExpr> exprs;

  std::size_t literal_count() const noexcept;
  std::size_t term_count() const noexcept;
  friend bool operator==(const SopExprList&, const SopExprList&) = default;
};

bool evaluate(const SopExpr& expr, std::uint32_t x) noexcept;

/// Full minterm expansion: one k-literal cube per care-set member.
SopExprList synthesize_sop(const TruthTable& tt);

/// Bit i of the result is the value of exprs[i] under x_j = assignment[j].
BitString eval(const SopExprList& exprs, const BitString& assignment);
BitString eval_index(const SopExprList& exprs, std::uint32_t x);

/// Same as eval_index with bit i of the result at bit position i of the
/// word. Requires at most 64 expressions; does not allocate.
std::uint64_t eval_packed(const SopExprList& exprs, std::uint32_t x) noexcept;

ParamTriple decode(const ToBinTable& tb, const BitString& bits);

/// On-set of one expression as a 2^k bitmap.
std::vector<std::uint8_t> onset_of(const SopExpr& expr, unsigned k);

/// Truth table of the whole list.
TruthTable truth_table_of(const SopExprList& exprs);

/// Textual form used for hashing: literals "x3" / "~x3" in variable order
/// joined by '*', terms sorted by their text and joined by '+', expressions
/// joined by ';'. The constant 0 is "0" and the empty product is "1".
std::string canonical_text(const SopExprList& exprs);
std::string canonical_text(const SopExpr& expr);

/// Inverse of canonical_text for a known k. Accepts terms in any order and
/// returns nullopt for anything malformed.
std::optional<SopExprList> parse_canonical(std::string_view text, unsigned k);

}  // namespace hwbind
