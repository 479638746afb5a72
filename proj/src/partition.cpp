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

#include "hwbind/partition.hpp"

#include <algorithm>
#include <string>

#include "hwbind/error.hpp"

namespace hwbind {

std::uint32_t assignment_index(const BitString& assignment) {
  if (assignment.size() > kMaxAssignmentBits) {
    throw ParameterError("assignment wider than " + std::to_string(kMaxAssignmentBits) + " bits");
  }
  std::uint32_t x = 0;
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    if (assignment[j]) x |= std::uint32_t{1} << j;
  }
  return x;
}

BitString assignment_bits(std::uint32_t index, unsigned k) {
  BitString out(k);
  for (unsigned j = 0; j < k; ++j) out.set(j, (index >> j) & 1U);
  return out;
}

std::vector<std::size_t> Partition::class_of() const {
  std::vector<std::size_t> out(std::size_t{1} << k, 0);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (auto x : classes[c]) out.at(x) = c;
  }
  return out;
}

void Partition::validate() const {
  if (k == 0 || k > kMaxAssignmentBits) throw ParameterError("partition width out of range");
  const std::size_t total = std::size_t{1} << k;
  std::vector<std::uint8_t> seen(total, 0);
  for (const auto& cls : classes) {
    if (cls.empty()) throw ParameterError("partition class is empty");
    for (auto x : cls) {
      if (x >= total) throw ParameterError("partition member outside {0,1}^k");
      if (seen[x]++) throw ParameterError("partition classes overlap");
    }
  }
  if (std::count(seen.begin(), seen.end(), 0) != 0) {
    throw ParameterError("partition does not cover {0,1}^k");
  }
}

Partition Partition::from_strings(
    unsigned k, const std::vector<std::vector<std::string_view>>& classes) {
  Partition p{k, {}};
  for (const auto& cls : classes) {
    auto& out = p.classes.emplace_back();
    for (auto s : cls) {
      auto bits = BitString::from_string(s);
      if (bits.size() != k) throw ParameterError("partition member has wrong width");
      out.push_back(assignment_index(bits));
    }
    std::sort(out.begin(), out.end());
  }
  p.validate();
  return p;
}

Partition build_partition(unsigned k, std::size_t m, const BitString& r, Seed seed) {
  if (k == 0 || k > kMaxAssignmentBits) {
    throw ParameterError("k must lie in [1, " + std::to_string(kMaxAssignmentBits) + "]");
  }
  if (r.size() != k) throw ParameterError("r must have k bits");
  const std::size_t total = std::size_t{1} << k;
  if (total < m + 1) {
    throw CapacityError("2^" + std::to_string(k) + " assignments cannot hold " +
                        std::to_string(m + 1) + " nonempty classes");
  }

  const std::uint32_t anchor = assignment_index(r);
  std::vector<std::uint32_t> rest;
  rest.reserve(total - 1);
  for (std::uint32_t x = 0; x < total; ++x) {
    if (x != anchor) rest.push_back(x);
  }
  Rng rng(derive_seed(seed, "partition"));
  for (std::size_t i = rest.size(); i > 1; --i) {
    std::swap(rest[i - 1], rest[rng.below(i)]);
  }

  Partition p{k, std::vector<std::vector<std::uint32_t>>(m + 1)};
  p.classes[0].push_back(anchor);
  for (std::size_t i = 0; i < rest.size(); ++i) {
    p.classes[(i + 1) % (m + 1)].push_back(rest[i]);
  }
  for (auto& cls : p.classes) std::sort(cls.begin(), cls.end());
  return p;
}

}  // namespace hwbind
