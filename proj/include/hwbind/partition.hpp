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

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "hwbind/bitstring.hpp"
#include "hwbind/random.hpp"

namespace hwbind {

/// Largest assignment width supported by full truth-table enumeration.
inline constexpr unsigned kMaxAssignmentBits = 20;

/// An assignment a_0 ... a_{k-1} to x_0 ... x_{k-1}, packed with x_j at bit j.
/// This packing is used for truth-table row indices and cube masks.
std::uint32_t assignment_index(const BitString& assignment);
BitString assignment_bits(std::uint32_t index, unsigned k);

/// Partition of {0,1}^k into m + 1 nonempty classes A_0 .. A_m.
struct Partition {
  unsigned k = 0;
  std::vector<std::vector<std::uint32_t>> classes;  // assignment indices

  std::size_t m() const noexcept { return classes.size() - 1; }
  /// class_of()[x] is the class containing assignment index x.
  std::vector<std::size_t> class_of() const;

  /// Checks disjointness, coverage and non-emptiness.
  void validate() const;

  /// Builds from textual classes such as {{"000","011"}, {"001","010"}}.
  static Partition from_strings(unsigned k,
                                const std::vector<std::vector<std::string_view>>& classes);

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// r goes to A_0. The other 2^k - 1 strings are shuffled from `seed` and dealt
/// round-robin continuing after r (A_1, A_2, ..., A_m, A_0, A_1, ...), so
/// every class is nonempty and sizes differ by at most one.
Partition build_partition(unsigned k, std::size_t m, const BitString& r, Seed seed);

}  // namespace hwbind
