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

#include "hwbind/tobin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>

#include "hwbind/error.hpp"

namespace hwbind {

std::string to_string(const ParamTriple& t) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << t.kp << ',' << t.ki << ',' << t.kd << ')';
  return os.str();
}

ParamTable::ParamTable(std::vector<ParamTriple> triples) : triples_(std::move(triples)) {
  if (triples_.size() < 4) {
    throw ParameterError("parameter table needs the optimal triple and m > 2 alternatives");
  }
  for (const auto& t : triples_) {
    if (!std::isfinite(t.kp) || !std::isfinite(t.ki) || !std::isfinite(t.kd)) {
      throw ParameterError("parameter values must be finite");
    }
  }
  std::set<ParamTriple> seen;
  for (const auto& t : triples_) {
    if (!seen.insert(t).second) {
      throw ParameterError("duplicate triple " + to_string(t) + " in parameter table");
    }
  }
}

std::vector<double> ParamTable::distinct_values() const {
  std::vector<double> out;
  auto add = [&](double v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  for (const auto& t : triples_) {
    add(t.kp);
    add(t.ki);
    add(t.kd);
  }
  return out;
}

namespace {

unsigned minimum_width(std::size_t distinct) {
  // floor(log2 |V|) + 1
  return static_cast<unsigned>(std::bit_width(distinct));
}

bool is_small_integer(double v, unsigned n) {
  return v >= 0.0 && v == std::floor(v) && v < std::ldexp(1.0, static_cast<int>(n));
}

}  // namespace

ToBinTable::ToBinTable(ToBinMode mode, unsigned n, std::vector<double> index_values)
    : mode_(mode), n_(n), index_values_(std::move(index_values)) {
  if (n_ == 0 || n_ > 24) throw WidthError("toBin width must lie in [1, 24]");
  if (mode_ == ToBinMode::kInteger) {
    if (!index_values_.empty()) throw ParameterError("integer toBin takes no value list");
    return;
  }
  const std::size_t codes = std::size_t{1} << n_;
  if (index_values_.size() > codes) {
    throw WidthError(std::to_string(index_values_.size()) + " values do not fit in " +
                     std::to_string(n_) + " bits");
  }
  std::set<double> used(index_values_.begin(), index_values_.end());
  if (used.size() != index_values_.size()) throw ParameterError("duplicate toBin value");
  double next = 0.0;
  for (std::size_t c = index_values_.size(); c < codes; ++c) {
    while (used.count(next) != 0) next += 1.0;
    spare_values_.push_back(next);
    next += 1.0;
  }
}

std::uint32_t ToBinTable::code_of(double value) const {
  if (mode_ == ToBinMode::kInteger) {
    if (!is_small_integer(value, n_)) {
      throw ParameterError("value " + std::to_string(value) + " outside integer toBin domain");
    }
    return static_cast<std::uint32_t>(value);
  }
  auto it = std::find(index_values_.begin(), index_values_.end(), value);
  if (it != index_values_.end()) {
    return static_cast<std::uint32_t>(it - index_values_.begin());
  }
  auto spare = std::find(spare_values_.begin(), spare_values_.end(), value);
  if (spare != spare_values_.end()) {
    return static_cast<std::uint32_t>(index_values_.size() + (spare - spare_values_.begin()));
  }
  throw ParameterError("value " + std::to_string(value) + " outside toBin domain");
}

double ToBinTable::value_of(std::uint32_t code) const {
  if (code >= (std::uint32_t{1} << n_)) throw ParameterError("toBin code out of range");
  if (mode_ == ToBinMode::kInteger) return static_cast<double>(code);
  if (code < index_values_.size()) return index_values_[code];
  return spare_values_[code - index_values_.size()];
}

BitString ToBinTable::encode(double value) const {
  return BitString::from_uint(code_of(value), n_);
}

double ToBinTable::decode(const BitString& bits) const {
  if (bits.size() != n_) throw ParameterError("toBin decode width mismatch");
  return value_of(static_cast<std::uint32_t>(bits.to_uint()));
}

BitString ToBinTable::encode(const ParamTriple& t) const {
  BitString out = encode(t.kp);
  out.append(encode(t.ki));
  out.append(encode(t.kd));
  return out;
}

ParamTriple ToBinTable::decode_triple(const BitString& bits) const {
  if (bits.size() != 3 * n_) throw ParameterError("triple decode width mismatch");
  return {decode(bits.slice(0, n_)), decode(bits.slice(n_, n_)), decode(bits.slice(2 * n_, n_))};
}

ToBinTable build_tobin(const ParamTable& table) {
  return build_tobin(table, std::max(4U, minimum_width(table.distinct_values().size())));
}

ToBinTable build_tobin(const ParamTable& table, unsigned n) {
  auto values = table.distinct_values();
  if (n < minimum_width(values.size())) {
    throw WidthError(std::to_string(values.size()) + " distinct values need at least " +
                     std::to_string(minimum_width(values.size())) + " bits, got " +
                     std::to_string(n));
  }
  const bool integral = std::all_of(values.begin(), values.end(),
                                    [n](double v) { return is_small_integer(v, n); });
  if (integral) return ToBinTable(ToBinMode::kInteger, n);
  return ToBinTable(ToBinMode::kIndex, n, std::move(values));
}

}  // namespace hwbind
