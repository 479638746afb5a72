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

// Shared fixtures and brute-force oracles for the test binaries. The oracles
// deliberately avoid the library's own encoders and evaluators.

#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "hwbind/partition.hpp"
#include "hwbind/random.hpp"
#include "hwbind/sop.hpp"
#include "hwbind/tobin.hpp"

namespace hwbind::testing {

// T = {(2,3,5), (3,3,0), (1,0,9), (8,6,3)}, optimal first.
inline ParamTable worked_table() {
  return ParamTable({{2, 3, 5}, {3, 3, 0}, {1, 0, 9}, {8, 6, 3}});
}

// A_0 = {000,011}, A_1 = {001,010}, A_2 = {100,101}, A_3 = {110,111}
// where the string is a_0 a_1 a_2.
inline Partition worked_partition() {
  return Partition::from_strings(3, {{"000", "011"}, {"001", "010"}, {"100", "101"}, {"110", "111"}});
}

// Fixture seed for which build_partition(3, 3, 000, seed) yields the
// partition above.
inline constexpr Seed kWorkedPartitionSeed = 118;

// phi_i (and phi'_i) of the worked example as sums of psi_j, where psi_j
// covers exactly A_j. Bit order matches toBin(Kp).toBin(Ki).toBin(Kd).
using PsiSets = std::vector<std::set<std::size_t>>;

inline const PsiSets kWorkedPhi = {{3}, {}, {0, 1}, {1, 2}, {}, {3},
                                  {0, 1, 3}, {0, 1}, {2}, {0}, {3}, {0, 2, 3}};
inline const PsiSets kWorkedPhiPrime = {{3}, {}, {}, {0, 1, 2}, {}, {3},
                                       {3}, {}, {0, 1, 2}, {}, {3}, {0, 1, 2, 3}};

// Assignment string a_0..a_{k-1} of row x, written without library help.
inline std::string assignment_text(std::uint32_t x, unsigned k) {
  std::string s;
  for (unsigned j = 0; j < k; ++j) s.push_back(((x >> j) & 1U) ? '1' : '0');
  return s;
}

// n-bit big-endian binary of a nonnegative integer value.
inline std::string binary_text(long value, unsigned n) {
  std::string s(n, '0');
  for (unsigned i = 0; i < n; ++i) {
    if ((value >> (n - 1 - i)) & 1L) s[i] = '1';
  }
  return s;
}

inline std::string triple_code_text(const ParamTriple& t, unsigned n) {
  return binary_text(static_cast<long>(t.kp), n) + binary_text(static_cast<long>(t.ki), n) +
         binary_text(static_cast<long>(t.kd), n);
}

// Which class holds row x.
inline std::size_t class_index(const Partition& p, std::uint32_t x) {
  for (std::size_t i = 0; i < p.classes.size(); ++i) {
    for (auto y : p.classes[i]) {
      if (y == x) return i;
    }
  }
  return SIZE_MAX;
}

// Expected f(x) / f'(x) for an integer table, straight from the definition.
inline std::string oracle_f(const ParamTable& t, const Partition& p, std::uint32_t x, unsigned n) {
  return triple_code_text(t[class_index(p, x)], n);
}

inline std::string oracle_f_prime(const ParamTable& t, const Partition& p, std::size_t c,
                                  std::uint32_t x, unsigned n,
                                  FallbackRule rule = FallbackRule::kDefinition) {
  const std::size_t i = class_index(p, x);
  const std::size_t m = t.m();
  std::size_t j;
  if (rule == FallbackRule::kDefinition) {
    j = (i >= 1 && i <= c) ? i : c;
  } else {
    j = i >= m - c + 1 ? i : m - c + 1;
  }
  return triple_code_text(t[j], n);
}

// Literal-by-literal SOP evaluation.
inline bool oracle_eval(const SopExpr& e, std::uint32_t x, unsigned k) {
  for (const auto& cube : e) {
    bool all = true;
    for (unsigned j = 0; j < k && all; ++j) {
      if (!((cube.care >> j) & 1U)) continue;
      const bool var = (x >> j) & 1U;
      const bool positive = (cube.polarity >> j) & 1U;
      if (var != positive) all = false;
    }
    if (all) return true;
  }
  return false;
}

inline std::string oracle_eval_list(const SopExprList& l, std::uint32_t x) {
  std::string s;
  for (const auto& e : l.exprs) s.push_back(oracle_eval(e, x, l.k) ? '1' : '0');
  return s;
}

inline std::uint64_t oracle_binomial(unsigned n, unsigned r) {
  std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (unsigned i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (unsigned j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return r <= n ? c[n][r] : 0;
}

// m + 1 distinct triples with integer entries in [0, bound).
inline ParamTable random_int_table(Rng& rng, std::size_t m, std::uint64_t bound) {
  std::set<ParamTriple> seen;
  std::vector<ParamTriple> v;
  while (v.size() < m + 1) {
    ParamTriple t{double(rng.below(bound)), double(rng.below(bound)), double(rng.below(bound))};
    if (seen.insert(t).second) v.push_back(t);
  }
  return ParamTable(std::move(v));
}

// Random partition of {0,1}^k into m + 1 nonempty classes, drawn without
// build_partition: every class first gets one distinct row, the rest land
// uniformly.
inline Partition random_partition(Rng& rng, unsigned k, std::size_t m) {
  const std::uint32_t total = std::uint32_t{1} << k;
  std::vector<std::uint32_t> rows(total);
  for (std::uint32_t x = 0; x < total; ++x) rows[x] = x;
  for (std::uint32_t i = total - 1; i > 0; --i) {
    std::swap(rows[i], rows[rng.below(i + 1)]);
  }
  Partition p;
  p.k = k;
  p.classes.resize(m + 1);
  for (std::uint32_t i = 0; i < total; ++i) {
    const std::size_t cls = i <= m ? i : rng.below(m + 1);
    p.classes[cls].push_back(rows[i]);
  }
  for (auto& c : p.classes) std::sort(c.begin(), c.end());
  return p;
}

}  // namespace hwbind::testing
