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

#include "hwbind/bind.hpp"

#include <algorithm>
#include <string>

#include "hwbind/error.hpp"
#include "hwbind/minimize.hpp"
#include "hwbind/partition.hpp"

namespace hwbind {

namespace {
constexpr std::size_t kEncKeyLen = 16;
}

DeviceKeyMaterial DeviceKeyMaterial::from_key(std::span<const std::uint8_t> key) {
  return from_keys(key, key);
}

DeviceKeyMaterial DeviceKeyMaterial::from_keys(std::span<const std::uint8_t> enc_source,
                                               std::span<const std::uint8_t> assign_source) {
  if (enc_source.size() < kEncKeyLen + 1 || assign_source.size() < kEncKeyLen + 1) {
    throw ParameterError("identifier must hold at least 17 bytes");
  }
  DeviceKeyMaterial km;
  std::copy_n(enc_source.begin(), kEncKeyLen, km.enc_key.begin());
  km.assign_pool.assign(assign_source.begin() + kEncKeyLen, assign_source.end());
  return km;
}

DeviceKeyMaterial DeviceKeyMaterial::zeroed(std::size_t key_len) {
  DeviceKeyMaterial km;
  km.assign_pool.assign(key_len > kEncKeyLen ? key_len - kEncKeyLen : 1, 0);
  return km;
}

BitString query_puf(const DeviceKeyMaterial& km, unsigned k) {
  if (k > 8 * km.assign_pool.size()) {
    throw ParameterError("k = " + std::to_string(k) + " exceeds the " +
                         std::to_string(8 * km.assign_pool.size()) + "-bit assignment pool");
  }
  return BitString::unpack(km.assign_pool, k);
}

Digest expr_hash(const SopExprList& phi) {
  const std::string text = canonical_text(phi);
  return sha256({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

EncodedExprs encode_exprs(const SopExprList& phi, const AesKey& enc_key, const Nonce& nonce) {
  const std::string text = canonical_text(phi);
  EncodedExprs out;
  out.nonce = nonce;
  out.ciphertext = aes128_ctr(
      enc_key, nonce, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
  return out;
}

EncodedExprs encode_exprs(const SopExprList& phi, const AesKey& enc_key, Rng& rng) {
  Nonce nonce{};
  auto bytes = rng.bytes(nonce.size());
  std::copy(bytes.begin(), bytes.end(), nonce.begin());
  return encode_exprs(phi, enc_key, nonce);
}

std::optional<SopExprList> recover_exprs(const ProtectedBundle& bundle, const AesKey& enc_key) {
  const Bytes plain = aes128_ctr(enc_key, bundle.encoded.nonce, bundle.encoded.ciphertext);
  const std::string_view text(reinterpret_cast<const char*>(plain.data()), plain.size());
  return parse_canonical(text, bundle.k);
}

ProtectedBundle bind(const ParamTable& table, const EnrollmentRecord& rec, unsigned k,
                     std::size_t c, Seed seed, const BindOptions& options) {
  if (k < 1) throw ParameterError("k must be at least 1");
  if (c <= 1 || c > table.m()) throw ParameterError("c must satisfy 1 < c <= m");
  if (rec.key.size() != rec.helper.key_len) {
    throw ParameterError("enrollment record key does not match its helper data");
  }

  const DeviceKeyMaterial km =
      options.enc_record ? DeviceKeyMaterial::from_keys(options.enc_record->key, rec.key)
                         : DeviceKeyMaterial::from_key(rec.key);
  const BitString r = query_puf(km, k);

  const Partition part = build_partition(k, table.m(), r, derive_seed(seed, "bind.partition"));
  const ToBinTable tb = build_tobin(table);
  const EncodingTables tables = derive_truth_tables(table, part, tb, c);

  SopExprList phi = synthesize_sop(tables.f);
  SopExprList phi_prime = synthesize_sop(tables.f_prime);
  if (options.minimize) {
    phi = minimize(phi);
    phi_prime = minimize(phi_prime);
  }

  Rng nonce_rng(derive_seed(seed, "bind.nonce"));
  ProtectedBundle bundle;
  bundle.k = k;
  bundle.tobin = tb;
  bundle.phi_prime = std::move(phi_prime);
  bundle.hash_value = expr_hash(phi);
  bundle.encoded = encode_exprs(phi, km.enc_key, nonce_rng);
  bundle.helper = rec.helper;
  if (options.enc_record) bundle.enc_helper = options.enc_record->helper;
  return bundle;
}

RecoveryTrace recover_values_traced(const ProtectedBundle& bundle, const BitString& startup_bits) {
  RecoveryTrace trace;

  auto key = unlock(bundle.helper, puf_window(bundle.helper, startup_bits));
  std::optional<Bytes> enc_source = key;
  if (bundle.enc_helper) {
    enc_source = unlock(*bundle.enc_helper, puf_window(*bundle.enc_helper, startup_bits));
  }
  trace.unlocked = key.has_value() && enc_source.has_value();

  DeviceKeyMaterial km = DeviceKeyMaterial::zeroed(bundle.helper.key_len);
  if (key && enc_source) {
    km = DeviceKeyMaterial::from_keys(*enc_source, *key);
  } else if (key) {
    km.assign_pool.assign(key->begin() + kEncKeyLen, key->end());
  }

  // k was validated against the pool at bind time; a zeroed pool has the
  // same length as the real one.
  trace.assignment = query_puf(km, bundle.k);

  const auto phi = recover_exprs(bundle, km.enc_key);
  trace.hash_matched = phi.has_value() && expr_hash(*phi) == bundle.hash_value;

  const SopExprList& chosen = trace.hash_matched ? *phi : bundle.phi_prime;
  trace.encoded_values = eval(chosen, trace.assignment);
  trace.values = decode(bundle.tobin, trace.encoded_values);
  return trace;
}

ParamTriple recover_values(const ProtectedBundle& bundle, const BitString& startup_bits) {
  return recover_values_traced(bundle, startup_bits).values;
}

}  // namespace hwbind
