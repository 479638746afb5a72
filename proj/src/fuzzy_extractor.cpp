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

#include "hwbind/fuzzy_extractor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hwbind/error.hpp"

namespace hwbind {

std::uint64_t mask_count(std::size_t sz, std::size_t hd) {
  if (hd > sz) return 0;
  hd = std::min(hd, sz - hd);
  std::uint64_t result = 1;
  for (std::size_t i = 1; i <= hd; ++i) {
    // result * (sz - hd + i) / i stays exact because result is C(sz-hd+i-1, i-1).
    const std::uint64_t factor = sz - hd + i;
    if (result > UINT64_MAX / factor) return UINT64_MAX;
    result = result * factor / i;
  }
  return result;
}

void check_mask_capacity(std::size_t sz, std::size_t hd, std::uint64_t cap) {
  if (hd > sz) throw ParameterError("hd must not exceed sz");
  const auto nm = mask_count(sz, hd);
  if (nm > cap) {
    throw CapacityError("C(" + std::to_string(sz) + ", " + std::to_string(hd) +
                        ") = " + std::to_string(nm) + " masks exceeds cap " +
                        std::to_string(cap));
  }
}

void for_each_mask(std::size_t sz, std::size_t hd,
                   const std::function<bool(std::span<const std::size_t>)>& visit) {
  if (hd > sz) return;
  std::vector<std::size_t> zeros(hd);
  std::iota(zeros.begin(), zeros.end(), std::size_t{0});
  while (true) {
    if (!visit(zeros)) return;
    // Advance to the next combination in lexicographic order.
    std::size_t i = hd;
    while (i > 0 && zeros[i - 1] == sz - hd + i - 1) --i;
    if (i == 0) return;
    ++zeros[i - 1];
    for (std::size_t j = i; j < hd; ++j) zeros[j] = zeros[j - 1] + 1;
  }
}

std::vector<Mask> gen_masks(std::size_t sz, std::size_t hd, std::uint64_t cap) {
  check_mask_capacity(sz, hd, cap);
  std::vector<Mask> masks;
  masks.reserve(mask_count(sz, hd));
  for_each_mask(sz, hd, [&](std::span<const std::size_t> zeros) {
    Mask m{BitString(sz, true)};
    for (auto z : zeros) m.bits.set(z, false);
    masks.push_back(std::move(m));
    return true;
  });
  return masks;
}

namespace {

void clear_bit(Bytes& packed, std::size_t pos) {
  packed[pos / 8] &= static_cast<std::uint8_t>(~(0x80U >> (pos % 8)));
}

Locker make_locker(Sha256& hasher, std::span<const std::uint8_t> key,
                   std::span<const std::uint8_t> masked_packed, Rng& rng) {
  Locker locker;
  auto nonce = rng.bytes(locker.nonce.size());
  std::copy(nonce.begin(), nonce.end(), locker.nonce.begin());

  Bytes input(locker.nonce.begin(), locker.nonce.end());
  input.insert(input.end(), masked_packed.begin(), masked_packed.end());

  locker.ciphertext.assign(key.size() + kLockerCheckLen, 0);
  hasher.expand(input, locker.ciphertext);
  for (std::size_t i = 0; i < key.size(); ++i) locker.ciphertext[i] ^= key[i];
  return locker;
}

}  // namespace

std::vector<Locker> lock(std::span<const std::uint8_t> key, const BitString& b,
                         std::span<const Mask> masks, Rng& rng) {
  if (key.empty()) throw ParameterError("cannot lock an empty key");
  Sha256 hasher;
  std::vector<Locker> lockers;
  lockers.reserve(masks.size());
  for (const auto& m : masks) {
    lockers.push_back(make_locker(hasher, key, (b & m.bits).pack(), rng));
  }
  return lockers;
}

std::vector<Locker> lock(std::span<const std::uint8_t> key, const BitString& b,
                         std::size_t hd, Rng& rng, std::uint64_t cap) {
  if (key.empty()) throw ParameterError("cannot lock an empty key");
  check_mask_capacity(b.size(), hd, cap);
  Sha256 hasher;
  const Bytes packed = b.pack();
  std::vector<Locker> lockers;
  lockers.reserve(mask_count(b.size(), hd));
  Bytes work;
  for_each_mask(b.size(), hd, [&](std::span<const std::size_t> zeros) {
    work = packed;
    for (auto z : zeros) clear_bit(work, z);
    lockers.push_back(make_locker(hasher, key, work, rng));
    return true;
  });
  return lockers;
}

std::optional<Bytes> unlock(const HelperData& helper, const BitString& b_prime) {
  if (b_prime.size() != helper.sz) {
    throw ParameterError("reading length does not match helper sz");
  }
  if (helper.lockers.size() != mask_count(helper.sz, helper.hd)) {
    throw FormatError("helper data locker count does not match C(sz, hd)");
  }
  const Bytes packed = (b_prime & helper.sm).pack();
  const std::size_t pad_len = helper.key_len + kLockerCheckLen;

  Sha256 hasher;
  Bytes input(Nonce{}.size() + packed.size());
  Bytes pad(pad_len);
  std::optional<Bytes> result;
  std::size_t index = 0;

  for_each_mask(helper.sz, helper.hd, [&](std::span<const std::size_t> zeros) {
    const Locker& locker = helper.lockers[index++];
    if (locker.ciphertext.size() != pad_len) {
      throw FormatError("locker ciphertext has wrong length");
    }
    std::copy(locker.nonce.begin(), locker.nonce.end(), input.begin());
    auto body = input.begin() + static_cast<std::ptrdiff_t>(locker.nonce.size());
    std::copy(packed.begin(), packed.end(), body);
    for (auto z : zeros) {
      body[static_cast<std::ptrdiff_t>(z / 8)] &= static_cast<std::uint8_t>(~(0x80U >> (z % 8)));
    }
    hasher.expand(input, pad);

    bool opened = true;
    for (std::size_t i = helper.key_len; i < pad_len; ++i) {
      if ((pad[i] ^ locker.ciphertext[i]) != 0) {
        opened = false;
        break;
      }
    }
    if (!opened) return true;

    Bytes key(helper.key_len);
    for (std::size_t i = 0; i < helper.key_len; ++i) key[i] = pad[i] ^ locker.ciphertext[i];
    result = std::move(key);
    return false;
  });
  return result;
}

}  // namespace hwbind
