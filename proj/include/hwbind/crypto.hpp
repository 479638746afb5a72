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

// Thin wrappers over OpenSSL's libcrypto for the two primitives the binding
// scheme needs: SHA-256 and AES-128 in counter mode.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>

#include "hwbind/bitstring.hpp"

namespace hwbind {

using Digest = std::array<std::uint8_t, 32>;
using AesKey = std::array<std::uint8_t, 16>;
using Nonce = std::array<std::uint8_t, 16>;

Digest sha256(std::span<const std::uint8_t> data);

/// Reusable SHA-256 context for hot loops (locker probing).
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;
  Sha256(Sha256&&) noexcept;
  Sha256& operator=(Sha256&&) noexcept;

  /// SHA-256 over the concatenation of the given parts.
  Digest digest(std::initializer_list<std::span<const std::uint8_t>> parts);

  /// Counter-mode expansion: SHA256(input || be32(0)) || SHA256(input ||
  /// be32(1)) || ..., truncated to `length` bytes. Writes into `out`.
  void expand(std::span<const std::uint8_t> input, std::span<std::uint8_t> out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// AES-128-CTR with the 16-byte nonce as the initial counter block.
/// Encryption and decryption are the same operation.
Bytes aes128_ctr(const AesKey& key, const Nonce& nonce,
                 std::span<const std::uint8_t> data);

}  // namespace hwbind
