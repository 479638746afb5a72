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
#include <random>
#include <string_view>

#include "hwbind/bitstring.hpp"

namespace hwbind {

using Seed = std::uint64_t;

/// Mixes a parent seed with a domain tag and an index into an independent
/// child seed. Used to give every startup, locker and shuffle its own
/// reproducible stream.
Seed derive_seed(Seed parent, std::string_view tag, std::uint64_t index = 0);

/// Deterministic generator. The engine sequence is fixed by the standard and
/// the distributions below are implemented here rather than taken from
/// <random>, whose distributions differ between standard libraries.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01();

  /// Uniform in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);

  Bytes bytes(std::size_t count);

 private:
  std::mt19937_64 engine_;
};

}  // namespace hwbind
