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

// Parameter tables and the fixed-width binary encoding of their values.

#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "hwbind/bitstring.hpp"

namespace hwbind {

struct ParamTriple {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;

  friend bool operator==(const ParamTriple&, const ParamTriple&) = default;
  friend auto operator<=>(const ParamTriple&, const ParamTriple&) = default;
};

std::string to_string(const ParamTriple& t);

/// Index 0 is the protected (optimal) triple; 1..m are the alternatives.
class ParamTable {
 public:
  /// Requires m = triples.size() - 1 > 2 and pairwise distinct triples.
  explicit ParamTable(std::vector<ParamTriple> triples);

  const std::vector<ParamTriple>& triples() const noexcept { return triples_; }
  const ParamTriple& optimal() const { return triples_.front(); }
  const ParamTriple& operator[](std::size_t i) const { return triples_.at(i); }
  std::size_t m() const noexcept { return triples_.size() - 1; }

  /// Distinct values in first-appearance order (Kp, Ki, Kd per triple).
  std::vector<double> distinct_values() const;

 private:
  std::vector<ParamTriple> triples_;
};

enum class ToBinMode {
  kInteger,  // standard binary of nonnegative integers below 2^n
  kIndex,    // position in first-appearance order
};

/// Bijection between V u V' and {0,1}^n. In integer mode V' is the set of
/// unused integers below 2^n. In index mode the unused codes are assigned,
/// in increasing order, the smallest nonnegative integers not in V; when V
/// holds no small integers this is the raw code itself.
class ToBinTable {
 public:
  ToBinTable(ToBinMode mode, unsigned n, std::vector<double> index_values = {});

  ToBinMode mode() const noexcept { return mode_; }
  unsigned n() const noexcept { return n_; }
  /// Index-mode values in code order (empty in integer mode).
  const std::vector<double>& index_values() const noexcept { return index_values_; }

  std::uint32_t code_of(double value) const;
  double value_of(std::uint32_t code) const;

  BitString encode(double value) const;
  double decode(const BitString& bits) const;

  /// toBin(Kp) . toBin(Ki) . toBin(Kd), 3n bits.
  BitString encode(const ParamTriple& t) const;
  ParamTriple decode_triple(const BitString& bits) const;

  friend bool operator==(const ToBinTable&, const ToBinTable&) = default;

 private:
  ToBinMode mode_;
  unsigned n_;
  std::vector<double> index_values_;
  std::vector<double> spare_values_;  // index mode: value of each code >= |V|
};

/// n = max(4, floor(log2 |V|) + 1). Integer mode when every value is an
/// integer in [0, 2^n), index mode otherwise.
ToBinTable build_tobin(const ParamTable& table);

/// Same, with a caller-chosen width. Throws WidthError when |V| > 2^n.
ToBinTable build_tobin(const ParamTable& table, unsigned n);

}  // namespace hwbind
