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

#include "hwbind/crypto.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <stdexcept>

namespace hwbind {

namespace {

[[noreturn]] void openssl_failure(const char* what) {
  throw std::runtime_error(std::string("openssl: ") + what + " failed");
}

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};
struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};

}  // namespace

struct Sha256::Impl {
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx{EVP_MD_CTX_new()};
  const EVP_MD* md = EVP_sha256();
};

Sha256::Sha256() : impl_(std::make_unique<Impl>()) {
  if (!impl_->ctx) openssl_failure("EVP_MD_CTX_new");
}
Sha256::~Sha256() = default;
Sha256::Sha256(Sha256&&) noexcept = default;
Sha256& Sha256::operator=(Sha256&&) noexcept = default;

Digest Sha256::digest(std::initializer_list<std::span<const std::uint8_t>> parts) {
  EVP_MD_CTX* ctx = impl_->ctx.get();
  if (EVP_DigestInit_ex(ctx, impl_->md, nullptr) != 1) openssl_failure("DigestInit");
  for (auto part : parts) {
    if (!part.empty() && EVP_DigestUpdate(ctx, part.data(), part.size()) != 1) {
      openssl_failure("DigestUpdate");
    }
  }
  Digest out{};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx, out.data(), &len) != 1) openssl_failure("DigestFinal");
  return out;
}

void Sha256::expand(std::span<const std::uint8_t> input,
                    std::span<std::uint8_t> out) {
  std::size_t written = 0;
  for (std::uint32_t counter = 0; written < out.size(); ++counter) {
    const std::array<std::uint8_t, 4> ctr{
        static_cast<std::uint8_t>(counter >> 24), static_cast<std::uint8_t>(counter >> 16),
        static_cast<std::uint8_t>(counter >> 8), static_cast<std::uint8_t>(counter)};
    Digest block = digest({input, ctr});
    std::size_t take = std::min(block.size(), out.size() - written);
    std::copy_n(block.begin(), take, out.begin() + static_cast<std::ptrdiff_t>(written));
    written += take;
  }
}

Digest sha256(std::span<const std::uint8_t> data) {
  Sha256 h;
  return h.digest({data});
}

Bytes aes128_ctr(const AesKey& key, const Nonce& nonce,
                 std::span<const std::uint8_t> data) {
  std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter> ctx(EVP_CIPHER_CTX_new());
  if (!ctx) openssl_failure("EVP_CIPHER_CTX_new");
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_ctr(), nullptr, key.data(),
                         nonce.data()) != 1) {
    openssl_failure("EncryptInit");
  }
  Bytes out(data.size() + 16);
  int len = 0;
  int total = 0;
  if (!data.empty()) {
    if (EVP_EncryptUpdate(ctx.get(), out.data(), &len, data.data(),
                          static_cast<int>(data.size())) != 1) {
      openssl_failure("EncryptUpdate");
    }
    total = len;
  }
  if (EVP_EncryptFinal_ex(ctx.get(), out.data() + total, &len) != 1) {
    openssl_failure("EncryptFinal");
  }
  total += len;
  out.resize(static_cast<std::size_t>(total));
  return out;
}

}  // namespace hwbind
