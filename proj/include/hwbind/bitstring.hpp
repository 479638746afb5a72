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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hwbind {

using Bytes = std::vector<std::uint8_t>;

/// Variable-length bit string. Position 0 is the leftmost bit when printed
/// and the most significant bit of byte 0 when packed.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t size, bool value = false)
      : bits_(size, value ? 1 : 0) {}

  /// Parses a string of '0'/'1' characters. Spaces and underscores are
  /// ignored so that grouped literals such as "0010 0011" are accepted.
  static BitString from_string(std::string_view text);

  /// The `width` low bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t width);

  /// Unpacks `bit_count` bits from big-endian packed bytes.
  static BitString unpack(std::span<const std::uint8_t> bytes,
                          std::size_t bit_count);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool value) { bits_.at(i) = value ? 1 : 0; }

  std::size_t popcount() const noexcept;

  /// Bits [offset, offset + length).
  BitString slice(std::size_t offset, std::size_t length) const;
  void append(const BitString& other);

  /// Interprets the string as an unsigned integer, position 0 most
  /// significant. Requires size() <= 64.
  std::uint64_t to_uint() const;

  /// Packs into ceil(size / 8) bytes; trailing pad bits are zero.
  Bytes pack() const;

  std::string to_string() const;

  BitString operator&(const BitString& rhs) const;
  BitString operator^(const BitString& rhs) const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::size_t hamming_distance(const BitString& a, const BitString& b);

std::string to_hex(std::span<const std::uint8_t> bytes);
Bytes from_hex(std::string_view hex);

}  // namespace hwbind
