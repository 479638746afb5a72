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

#include "hwbind/bitstring.hpp"

#include <algorithm>

#include "hwbind/error.hpp"

namespace hwbind {

BitString BitString::from_string(std::string_view text) {
  BitString out;
  out.bits_.reserve(text.size());
  for (char ch : text) {
    if (ch == '0' || ch == '1') {
      out.bits_.push_back(ch == '1' ? 1 : 0);
    } else if (ch != ' ' && ch != '_') {
      throw ParameterError("bit string contains invalid character '" +
                           std::string(1, ch) + "'");
    }
  }
  return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  if (width > 64) throw ParameterError("bit width above 64");
  BitString out(width);
  for (std::size_t i = 0; i < width; ++i) {
    out.bits_[width - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1U);
  }
  return out;
}

BitString BitString::unpack(std::span<const std::uint8_t> bytes,
                            std::size_t bit_count) {
  if (bytes.size() * 8 < bit_count) {
    throw ParameterError("not enough bytes to unpack bit string");
  }
  BitString out(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) {
    out.bits_[i] = (bytes[i / 8] >> (7 - i % 8)) & 1U;
  }
  return out;
}

bool BitString::at(std::size_t i) const {
  return bits_.at(i) != 0;
}

std::size_t BitString::popcount() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

BitString BitString::slice(std::size_t offset, std::size_t length) const {
  if (offset > size() || length > size() - offset) {
    throw ParameterError("bit string slice out of range");
  }
  BitString out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(offset),
                   bits_.begin() + static_cast<std::ptrdiff_t>(offset + length));
  return out;
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::uint64_t BitString::to_uint() const {
  if (size() > 64) throw ParameterError("bit string wider than 64 bits");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

Bytes BitString::pack() const {
  Bytes out((size() + 7) / 8, 0);
  for (std::size_t i = 0; i < size(); ++i) {
    if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

std::string BitString::to_string() const {
  std::string s(size(), '0');
  for (std::size_t i = 0; i < size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

BitString BitString::operator&(const BitString& rhs) const {
  if (size() != rhs.size()) throw ParameterError("bit string length mismatch");
  BitString out(size());
  for (std::size_t i = 0; i < size(); ++i) out.bits_[i] = bits_[i] & rhs.bits_[i];
  return out;
}

BitString BitString::operator^(const BitString& rhs) const {
  if (size() != rhs.size()) throw ParameterError("bit string length mismatch");
  BitString out(size());
  for (std::size_t i = 0; i < size(); ++i) out.bits_[i] = bits_[i] ^ rhs.bits_[i];
  return out;
}

std::size_t hamming_distance(const BitString& a, const BitString& b) {
  return (a ^ b).popcount();
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

namespace {
int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw FormatError("hex string has odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw FormatError("invalid hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

}  // namespace hwbind
