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

// Fuzzy extractor built from digital lockers over deterministic subset masks.
//
// For a reference string b of sz bits and a tolerance hd, one mask is built
// for every way of choosing hd positions to drop; the masks are enumerated in
// lexicographic order of the dropped positions. Each locker hides K under a
// pad derived from (nonce, b AND mask):
//
//   ciphertext = SHA256-CTR(nonce || pack(b AND mask)) XOR (K || 0x00000000)
//
// A reading b' opens the locker iff it agrees with b on every position the
// mask keeps, which the four zero bytes detect. Any error pattern of weight
// <= hd is covered by at least one mask, so every such reading opens some
// locker.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hwbind/bitstring.hpp"
#include "hwbind/crypto.hpp"
#include "hwbind/random.hpp"

namespace hwbind {

inline constexpr std::size_t kLockerCheckLen = 4;
inline constexpr std::uint64_t kDefaultMaskCap = std::uint64_t{1} << 20;

/// One subset-sampling mask: a 1 keeps the position, a 0 drops it.
struct Mask {
  BitString bits;
  friend bool operator==(const Mask&, const Mask&) = default;
};

struct Locker {
  Nonce nonce{};
  Bytes ciphertext;  // key_len + kLockerCheckLen bytes
  friend bool operator==(const Locker&, const Locker&) = default;
};

/// Public enrollment artifact. Masks are not stored; they are re-derived
/// from (sz, hd) in the same order as `lockers`.
struct HelperData {
  std::size_t offset = 0;
  std::size_t sz = 0;
  std::size_t hd = 0;
  std::size_t key_len = 0;
  BitString sm;
  std::vector<Locker> lockers;

  std::size_t nm() const noexcept { return lockers.size(); }
  friend bool operator==(const HelperData&, const HelperData&) = default;
};

/// C(sz, hd), saturating at UINT64_MAX.
std::uint64_t mask_count(std::size_t sz, std::size_t hd);

/// Throws CapacityError when C(sz, hd) exceeds `cap`.
void check_mask_capacity(std::size_t sz, std::size_t hd,
                         std::uint64_t cap = kDefaultMaskCap);

/// Calls `visit` with the dropped positions of every mask, in lexicographic
/// order. Returning false from `visit` stops the enumeration.
void for_each_mask(std::size_t sz, std::size_t hd,
                   const std::function<bool(std::span<const std::size_t>)>& visit);

std::vector<Mask> gen_masks(std::size_t sz, std::size_t hd,
                            std::uint64_t cap = kDefaultMaskCap);

/// One locker per mask, in mask order.
std::vector<Locker> lock(std::span<const std::uint8_t> key, const BitString& b,
                         std::span<const Mask> masks, Rng& rng);

/// Same as building gen_masks(b.size(), hd) and locking under each, without
/// materializing the masks.
std::vector<Locker> lock(std::span<const std::uint8_t> key, const BitString& b,
                         std::size_t hd, Rng& rng,
                         std::uint64_t cap = kDefaultMaskCap);

/// Applies helper.sm to `b_prime` and tries each locker in order. Returns K
/// from the first locker that opens, or nullopt.
std::optional<Bytes> unlock(const HelperData& helper, const BitString& b_prime);

}  // namespace hwbind
