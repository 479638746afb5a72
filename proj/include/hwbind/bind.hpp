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

// Binding a parameter table to one enrolled device.
//
// The bundle ships the fallback expressions phi' in clear and the real
// expressions phi encrypted under the first 16 bytes of the PUF identifier K.
// On the device:
//
//   K   := unlock(helper, startup)            (all zeros if unlock fails)
//   phi := decrypt(encodedExprs, K[0..16))
//   a   := first k bits of K[16..]
//   if sha256(phi) == hashValue: return toBin^-1(eval(phi, a))
//   else:                        return toBin^-1(eval(phi', a))
//
// The optimal triple comes out only when both the decryption key and the
// assignment are right.

#pragma once

#include <cstddef>
#include <optional>

#include "hwbind/bitstring.hpp"
#include "hwbind/crypto.hpp"
#include "hwbind/enroll.hpp"
#include "hwbind/fuzzy_extractor.hpp"
#include "hwbind/random.hpp"
#include "hwbind/sop.hpp"
#include "hwbind/tobin.hpp"

namespace hwbind {

inline constexpr int kBundleFormatVersion = 1;

/// Key material recovered on the device. `enc_key` and `assign_pool` are
/// disjoint slices: K[0..16) and K[16..).
struct DeviceKeyMaterial {
  AesKey enc_key{};
  Bytes assign_pool;

  /// Single-source split of one identifier. Requires key.size() >= 17.
  static DeviceKeyMaterial from_key(std::span<const std::uint8_t> key);
  /// Two-source mode: cipher key from `enc_source`, assignment from
  /// `assign_source` (bytes after the first 16 of each identifier).
  static DeviceKeyMaterial from_keys(std::span<const std::uint8_t> enc_source,
                                     std::span<const std::uint8_t> assign_source);
  /// Stand-in used when the PUF cannot be unlocked.
  static DeviceKeyMaterial zeroed(std::size_t key_len);
};

/// First k bits of the assignment pool, most significant bit first.
BitString query_puf(const DeviceKeyMaterial& km, unsigned k);

struct EncodedExprs {
  Nonce nonce{};
  Bytes ciphertext;
  friend bool operator==(const EncodedExprs&, const EncodedExprs&) = default;
};

struct ProtectedBundle {
  int format_version = kBundleFormatVersion;
  unsigned k = 0;
  ToBinTable tobin{ToBinMode::kInteger, 4};
  SopExprList phi_prime;
  Digest hash_value{};
  EncodedExprs encoded;
  HelperData helper;
  /// Present in two-source mode: the cipher key comes from this second
  /// enrollment instead of the first 16 bytes of the primary identifier.
  std::optional<HelperData> enc_helper;

  friend bool operator==(const ProtectedBundle&, const ProtectedBundle&) = default;
};

Digest expr_hash(const SopExprList& phi);

/// AES-128-CTR over the canonical text; no tag.
EncodedExprs encode_exprs(const SopExprList& phi, const AesKey& enc_key, const Nonce& nonce);
EncodedExprs encode_exprs(const SopExprList& phi, const AesKey& enc_key, Rng& rng);

/// Decrypts and parses. nullopt when the plaintext does not parse; a
/// successful parse says nothing about authenticity.
std::optional<SopExprList> recover_exprs(const ProtectedBundle& bundle, const AesKey& enc_key);

struct BindOptions {
  /// Skip logic minimization (keeps full minterm expansions).
  bool minimize = true;
  /// Two-source mode; see ProtectedBundle::enc_helper.
  const EnrollmentRecord* enc_record = nullptr;
};

/// All randomness (partition shuffle, nonce) derives from `seed`.
ProtectedBundle bind(const ParamTable& table, const EnrollmentRecord& rec, unsigned k,
                     std::size_t c, Seed seed, const BindOptions& options = {});

/// Step-by-step account of one recovery, for diagnostics and tests.
struct RecoveryTrace {
  bool unlocked = false;
  bool hash_matched = false;
  BitString assignment;
  BitString encoded_values;
  ParamTriple values;
};

RecoveryTrace recover_values_traced(const ProtectedBundle& bundle, const BitString& startup_bits);

/// Never throws for well-formed bundles; on a clone it degrades to an
/// alternative triple.
ParamTriple recover_values(const ProtectedBundle& bundle, const BitString& startup_bits);

}  // namespace hwbind
