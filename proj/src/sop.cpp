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

#include "hwbind/sop.hpp"

#include <algorithm>
#include <charconv>

#include "hwbind/error.hpp"

namespace hwbind {

EncodingTables derive_truth_tables(const ParamTable& table, const Partition& part,
                                   const ToBinTable& tb, std::size_t c, FallbackRule rule) {
  const std::size_t m = table.m();
  if (c <= 1 || c > m) throw ParameterError("c must satisfy 1 < c <= m");
  if (part.classes.size() != m + 1) {
    throw ParameterError("partition must have m + 1 classes");
  }
  part.validate();

  std::vector<BitString> codes;
  codes.reserve(m + 1);
  for (const auto& t : table.triples()) codes.push_back(tb.encode(t));

  const unsigned width = 3 * tb.n();
  const std::size_t total = std::size_t{1} << part.k;
  EncodingTables out{{part.k, width, std::vector<BitString>(total)},
                     {part.k, width, std::vector<BitString>(total)}};
  // kept classes are [lo, hi]; everything else gets T[target]
  const std::size_t lo = rule == FallbackRule::kDefinition ? 1 : m - c + 1;
  const std::size_t hi = rule == FallbackRule::kDefinition ? c : m;
  const std::size_t target = rule == FallbackRule::kDefinition ? c : lo;
  const auto cls = part.class_of();
  for (std::size_t x = 0; x < total; ++x) {
    const std::size_t i = cls[x];
    out.f.rows[x] = codes[i];
    out.f_prime.rows[x] = (i >= lo && i <= hi) ? codes[i] : codes[target];
  }
  return out;
}

std::size_t SopExprList::literal_count() const noexcept {
  std::size_t n = 0;
  for (const auto& e : exprs) {
    for (const auto& cube : e) n += cube.literals();
  }
  return n;
}

std::size_t SopExprList::term_count() const noexcept {
  std::size_t n = 0;
  for (const auto& e : exprs) n += e.size();
  return n;
}

bool evaluate(const SopExpr& expr, std::uint32_t x) noexcept {
  for (const auto& cube : expr) {
    if (cube.covers(x)) return true;
  }
  return false;
}

SopExprList synthesize_sop(const TruthTable& tt) {
  if (tt.k > kMaxAssignmentBits) throw ParameterError("k too large for synthesis");
  const std::uint32_t full = (tt.k == 32) ? ~0U : ((std::uint32_t{1} << tt.k) - 1);
  SopExprList out{tt.k, std::vector<SopExpr>(tt.width)};
  for (std::uint32_t x = 0; x < tt.rows.size(); ++x) {
    const auto& row = tt.rows[x];
    if (row.size() != tt.width) throw ParameterError("truth table row has wrong width");
    for (unsigned i = 0; i < tt.width; ++i) {
      if (row[i]) out.exprs[i].push_back(Cube{full, x});
    }
  }
  return out;
}

BitString eval_index(const SopExprList& exprs, std::uint32_t x) {
  BitString out(exprs.exprs.size());
  for (std::size_t i = 0; i < exprs.exprs.size(); ++i) out.set(i, evaluate(exprs.exprs[i], x));
  return out;
}

std::uint64_t eval_packed(const SopExprList& exprs, std::uint32_t x) noexcept {
  std::uint64_t out = 0;
  const std::size_t n = std::min<std::size_t>(exprs.exprs.size(), 64);
  for (std::size_t i = 0; i < n; ++i) {
    if (evaluate(exprs.exprs[i], x)) out |= std::uint64_t{1} << i;
  }
  return out;
}

BitString eval(const SopExprList& exprs, const BitString& assignment) {
  if (assignment.size() != exprs.k) {
    throw ParameterError("assignment has " + std::to_string(assignment.size()) +
                         " bits, expressions expect " + std::to_string(exprs.k));
  }
  return eval_index(exprs, assignment_index(assignment));
}

ParamTriple decode(const ToBinTable& tb, const BitString& bits) {
  return tb.decode_triple(bits);
}

std::vector<std::uint8_t> onset_of(const SopExpr& expr, unsigned k) {
  std::vector<std::uint8_t> on(std::size_t{1} << k, 0);
  for (const auto& cube : expr) {
    // Enumerate the free variables of the cube via subset iteration.
    const std::uint32_t free = ((std::uint32_t{1} << k) - 1) & ~cube.care;
    std::uint32_t sub = 0;
    do {
      on[cube.polarity | sub] = 1;
      sub = (sub - free) & free;
    } while (sub != 0);
  }
  return on;
}

TruthTable truth_table_of(const SopExprList& exprs) {
  const auto width = static_cast<unsigned>(exprs.exprs.size());
  TruthTable tt{exprs.k, width, std::vector<BitString>(std::size_t{1} << exprs.k, BitString(width))};
  for (unsigned i = 0; i < width; ++i) {
    auto on = onset_of(exprs.exprs[i], exprs.k);
    for (std::size_t x = 0; x < on.size(); ++x) {
      if (on[x]) tt.rows[x].set(i, true);
    }
  }
  return tt;
}

namespace {

std::string cube_text(const Cube& cube, unsigned k) {
  if (cube.care == 0) return "1";
  std::string s;
  for (unsigned j = 0; j < k; ++j) {
    if (!((cube.care >> j) & 1U)) continue;
    if (!s.empty()) s.push_back('*');
    if (!((cube.polarity >> j) & 1U)) s.push_back('~');
    s.push_back('x');
    s += std::to_string(j);
  }
  return s;
}

unsigned highest_variable(const SopExpr& expr) {
  unsigned k = 0;
  for (const auto& c : expr) k = std::max(k, static_cast<unsigned>(std::bit_width(c.care)));
  return k;
}

std::string expr_text(const SopExpr& expr, unsigned k) {
  if (expr.empty()) return "0";
  std::vector<std::string> terms;
  terms.reserve(expr.size());
  for (const auto& c : expr) terms.push_back(cube_text(c, k));
  std::sort(terms.begin(), terms.end());
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out.push_back('+');
    out += terms[i];
  }
  return out;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<Cube> parse_cube(std::string_view text, unsigned k) {
  if (text == "1") return Cube{};
  Cube cube;
  for (auto lit : split(text, '*')) {
    bool negated = false;
    if (!lit.empty() && lit.front() == '~') {
      negated = true;
      lit.remove_prefix(1);
    }
    if (lit.size() < 2 || lit.front() != 'x') return std::nullopt;
    lit.remove_prefix(1);
    if (lit.size() > 1 && lit.front() == '0') return std::nullopt;
    unsigned j = 0;
    auto [ptr, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), j);
    if (ec != std::errc{} || ptr != lit.data() + lit.size() || j >= k) return std::nullopt;
    const std::uint32_t bit = std::uint32_t{1} << j;
    if (cube.care & bit) return std::nullopt;
    cube.care |= bit;
    if (!negated) cube.polarity |= bit;
  }
  return cube;
}

}  // namespace

std::string canonical_text(const SopExpr& expr) {
  return expr_text(expr, highest_variable(expr));
}

std::string canonical_text(const SopExprList& exprs) {
  std::string out;
  for (std::size_t i = 0; i < exprs.exprs.size(); ++i) {
    if (i) out.push_back(';');
    out += expr_text(exprs.exprs[i], exprs.k);
  }
  return out;
}

std::optional<SopExprList> parse_canonical(std::string_view text, unsigned k) {
  if (k == 0 || k > kMaxAssignmentBits || text.empty()) return std::nullopt;
  SopExprList out{k, {}};
  for (auto expr_part : split(text, ';')) {
    auto& expr = out.exprs.emplace_back();
    if (expr_part == "0") continue;
    for (auto term : split(expr_part, '+')) {
      auto cube = parse_cube(term, k);
      if (!cube) return std::nullopt;
      expr.push_back(*cube);
    }
  }
  return out;
}

}  // namespace hwbind
