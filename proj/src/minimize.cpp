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

#include "hwbind/minimize.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_set>

#include "hwbind/error.hpp"

namespace hwbind {

namespace {

std::uint32_t full_mask(unsigned k) { return (std::uint32_t{1} << k) - 1; }

std::uint64_t key_of(const Cube& c) {
  return (static_cast<std::uint64_t>(c.care) << 32) | c.polarity;
}

Cube cube_of(std::uint64_t key) {
  return Cube{static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key)};
}

template <typename Fn>
void for_each_minterm(const Cube& cube, unsigned k, Fn&& fn) {
  const std::uint32_t free = full_mask(k) & ~cube.care;
  std::uint32_t sub = 0;
  do {
    fn(cube.polarity | sub);
    sub = (sub - free) & free;
  } while (sub != 0);
}

bool cube_inside(const Cube& cube, unsigned k, const std::vector<std::uint8_t>& onset) {
  bool inside = true;
  const std::uint32_t free = full_mask(k) & ~cube.care;
  std::uint32_t sub = 0;
  do {
    if (!onset[cube.polarity | sub]) {
      inside = false;
      break;
    }
    sub = (sub - free) & free;
  } while (sub != 0);
  return inside;
}

/// a is contained in b.
bool contained_in(const Cube& a, const Cube& b) {
  return (b.care & ~a.care) == 0 && (a.polarity & b.care) == b.polarity;
}

std::size_t literal_count(const SopExpr& e) {
  std::size_t n = 0;
  for (const auto& c : e) n += c.literals();
  return n;
}

void canonical_order(SopExpr& e) {
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
}

/// Drops cubes whose minterms are all covered by other cubes, largest
/// literal count first.
void make_irredundant(SopExpr& cubes, unsigned k) {
  std::vector<std::uint32_t> count(std::size_t{1} << k, 0);
  for (const auto& c : cubes) for_each_minterm(c, k, [&](std::uint32_t x) { ++count[x]; });

  std::vector<std::size_t> order(cubes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cubes[a].literals() > cubes[b].literals();
  });
  std::vector<std::uint8_t> keep(cubes.size(), 1);
  for (auto i : order) {
    bool redundant = true;
    for_each_minterm(cubes[i], k, [&](std::uint32_t x) {
      if (count[x] < 2) redundant = false;
    });
    if (redundant) {
      keep[i] = 0;
      for_each_minterm(cubes[i], k, [&](std::uint32_t x) { --count[x]; });
    }
  }
  SopExpr out;
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    if (keep[i]) out.push_back(cubes[i]);
  }
  cubes = std::move(out);
}

// Branch and bound over the minterms left after the essential primes. The
// greedy cover is the incumbent; the search only replaces it when it finds
// fewer literals within its node budget.
class CoverSearch {
 public:
  CoverSearch(const std::vector<Cube>& primes,
              const std::vector<std::vector<std::uint32_t>>& covers,
              const std::vector<std::vector<std::uint32_t>>& covered_by,
              std::vector<std::uint32_t> todo)
      : primes_(primes), covers_(covers), covered_by_(covered_by), todo_(std::move(todo)) {
    hits_.assign(covered_by.size(), 0);
    for (auto x : todo_) {
      for (auto p : covered_by_[x]) max_cover_ = std::max<std::size_t>(max_cover_, covers_[p].size());
    }
    min_lits_ = 64;
    for (const auto& p : primes_) min_lits_ = std::min(min_lits_, p.literals());
  }

  /// Returns true when a cover cheaper than `bound` literals was found.
  bool run(std::size_t bound, std::size_t budget) {
    best_cost_ = bound;
    budget_ = budget;
    search(todo_.size(), 0);
    return !best_.empty();
  }
  const std::vector<std::uint32_t>& best() const { return best_; }

 private:
  void search(std::size_t open, std::size_t cost) {
    if (budget_ == 0) return;
    --budget_;
    if (open == 0) {
      if (cost < best_cost_) {
        best_cost_ = cost;
        best_ = picked_;
      }
      return;
    }
    const std::size_t need = (open + max_cover_ - 1) / max_cover_;
    if (cost + need * std::max(min_lits_, 1U) >= best_cost_) return;

    // Branch on the open minterm with the fewest candidate primes.
    std::uint32_t pivot = 0;
    std::size_t fewest = SIZE_MAX;
    for (auto x : todo_) {
      if (hits_[x] == 0 && covered_by_[x].size() < fewest) {
        fewest = covered_by_[x].size();
        pivot = x;
      }
    }
    std::vector<std::uint32_t> options = covered_by_[pivot];
    std::sort(options.begin(), options.end(), [&](std::uint32_t a, std::uint32_t b) {
      return primes_[a].literals() < primes_[b].literals();
    });
    for (auto p : options) {
      std::size_t newly = 0;
      for (auto x : covers_[p]) newly += hits_[x]++ == 0 && is_todo(x);
      picked_.push_back(p);
      search(open - newly, cost + primes_[p].literals());
      picked_.pop_back();
      for (auto x : covers_[p]) --hits_[x];
    }
  }

  bool is_todo(std::uint32_t x) const {
    return std::binary_search(todo_.begin(), todo_.end(), x);
  }

  const std::vector<Cube>& primes_;
  const std::vector<std::vector<std::uint32_t>>& covers_;
  const std::vector<std::vector<std::uint32_t>>& covered_by_;
  std::vector<std::uint32_t> todo_;  // sorted
  std::vector<std::uint32_t> hits_;
  std::vector<std::uint32_t> picked_;
  std::vector<std::uint32_t> best_;
  std::size_t best_cost_ = 0;
  std::size_t budget_ = 0;
  std::size_t max_cover_ = 1;
  unsigned min_lits_ = 0;
};

constexpr std::size_t kSearchMaxMinterms = 256;
constexpr std::size_t kSearchNodeBudget = 20000;

SopExpr exact_cover(const std::vector<std::uint8_t>& onset, unsigned k) {
  auto primes = prime_implicants(onset, k);
  const std::size_t total = onset.size();

  std::vector<std::vector<std::uint32_t>> covers(primes.size());
  std::vector<std::vector<std::uint32_t>> covered_by(total);
  for (std::size_t p = 0; p < primes.size(); ++p) {
    for_each_minterm(primes[p], k, [&](std::uint32_t x) {
      covers[p].push_back(x);
      covered_by[x].push_back(static_cast<std::uint32_t>(p));
    });
  }

  std::vector<std::uint8_t> done(total, 0);
  std::vector<std::uint8_t> chosen(primes.size(), 0);
  SopExpr result;
  auto take = [&](std::size_t p) {
    chosen[p] = 1;
    result.push_back(primes[p]);
    for (auto x : covers[p]) done[x] = 1;
  };

  // Essential primes.
  for (std::size_t x = 0; x < total; ++x) {
    if (onset[x] && covered_by[x].size() == 1 && !chosen[covered_by[x][0]]) {
      take(covered_by[x][0]);
    }
  }
  const SopExpr essentials = result;
  std::vector<std::uint32_t> todo;
  for (std::uint32_t x = 0; x < total; ++x) {
    if (onset[x] && !done[x]) todo.push_back(x);
  }

  // Greedy: most newly covered minterms, then fewest literals.
  std::vector<std::uint32_t> gain(primes.size(), 0);
  for (std::size_t p = 0; p < primes.size(); ++p) {
    for (auto x : covers[p]) gain[p] += done[x] ? 0 : 1;
  }
  while (true) {
    std::size_t best = primes.size();
    for (std::size_t p = 0; p < primes.size(); ++p) {
      if (chosen[p] || gain[p] == 0) continue;
      if (best == primes.size() || gain[p] > gain[best] ||
          (gain[p] == gain[best] && primes[p].literals() < primes[best].literals())) {
        best = p;
      }
    }
    if (best == primes.size()) break;
    for (auto x : covers[best]) {
      if (done[x]) continue;
      for (auto q : covered_by[x]) --gain[q];
    }
    take(best);
  }
  make_irredundant(result, k);

  if (!todo.empty() && todo.size() <= kSearchMaxMinterms) {
    const std::size_t greedy_cost = literal_count(result) - literal_count(essentials);
    CoverSearch search(primes, covers, covered_by, todo);
    if (search.run(greedy_cost, kSearchNodeBudget)) {
      result = essentials;
      for (auto p : search.best()) result.push_back(primes[p]);
      make_irredundant(result, k);
    }
  }
  canonical_order(result);
  return result;
}

/// Grows each cube by dropping literals while it stays inside the on-set.
/// `rotation` shifts the order in which variables are tried.
SopExpr expand(const SopExpr& cubes, unsigned k, const std::vector<std::uint8_t>& onset,
               unsigned rotation) {
  std::vector<Cube> sorted = cubes;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Cube& a, const Cube& b) { return a.literals() < b.literals(); });
  SopExpr out;
  for (auto cube : sorted) {
    bool absorbed = false;
    for (const auto& big : out) {
      if (contained_in(cube, big)) {
        absorbed = true;
        break;
      }
    }
    if (absorbed) continue;
    for (unsigned step = 0; step < k; ++step) {
      const unsigned j = (step + rotation) % k;
      const std::uint32_t bit = std::uint32_t{1} << j;
      if (!(cube.care & bit)) continue;
      Cube wider{cube.care & ~bit, cube.polarity & ~bit};
      if (cube_inside(wider, k, onset)) cube = wider;
    }
    out.push_back(cube);
  }
  return out;
}

/// Shrinks each cube to the smallest cube holding the minterms only it
/// covers, which gives the next expand a different starting point.
SopExpr reduce(const SopExpr& cubes, unsigned k) {
  std::vector<std::uint32_t> count(std::size_t{1} << k, 0);
  for (const auto& c : cubes) for_each_minterm(c, k, [&](std::uint32_t x) { ++count[x]; });
  SopExpr out;
  // One cube at a time, so a minterm shared by two cubes is never dropped
  // from both.
  for (const auto& c : cubes) {
    std::uint32_t all_and = full_mask(k), all_or = 0;
    bool any = false;
    for_each_minterm(c, k, [&](std::uint32_t x) {
      if (count[x] == 1) {
        all_and &= x;
        all_or |= x;
        any = true;
      }
    });
    if (!any) {
      out.push_back(c);
      continue;
    }
    // Variables constant over the unique minterms become literals.
    const std::uint32_t fixed = full_mask(k) & ~(all_and ^ all_or);
    const Cube smaller{fixed | c.care, all_and & (fixed | c.care)};
    for_each_minterm(c, k, [&](std::uint32_t x) { --count[x]; });
    for_each_minterm(smaller, k, [&](std::uint32_t x) { ++count[x]; });
    out.push_back(smaller);
  }
  return out;
}

}  // namespace

std::vector<Cube> prime_implicants(const std::vector<std::uint8_t>& onset, unsigned k) {
  if (k > kMaxAssignmentBits) throw ParameterError("k too large for minimization");
  if (onset.size() != (std::size_t{1} << k)) throw ParameterError("onset size must be 2^k");

  std::unordered_set<std::uint64_t> level;
  for (std::uint32_t x = 0; x < onset.size(); ++x) {
    if (onset[x]) level.insert(key_of(Cube{full_mask(k), x}));
  }
  std::vector<Cube> primes;
  while (!level.empty()) {
    std::unordered_set<std::uint64_t> next;
    std::unordered_set<std::uint64_t> merged;
    for (auto key : level) {
      const Cube c = cube_of(key);
      for (unsigned j = 0; j < k; ++j) {
        const std::uint32_t bit = std::uint32_t{1} << j;
        if (!(c.care & bit) || (c.polarity & bit)) continue;
        const Cube partner{c.care, c.polarity | bit};
        if (level.count(key_of(partner)) == 0) continue;
        merged.insert(key);
        merged.insert(key_of(partner));
        next.insert(key_of(Cube{c.care & ~bit, c.polarity}));
      }
    }
    for (auto key : level) {
      if (merged.count(key) == 0) primes.push_back(cube_of(key));
    }
    level = std::move(next);
  }
  std::sort(primes.begin(), primes.end());
  return primes;
}

SopExpr minimize_expr_heuristic(const SopExpr& expr, unsigned k) {
  if (k > kMaxAssignmentBits) throw ParameterError("k too large for minimization");
  if (expr.empty()) return expr;
  const auto onset = onset_of(expr, k);

  SopExpr best = expand(expr, k, onset, 0);
  make_irredundant(best, k);
  for (unsigned round = 1; round <= 3 && k > 0; ++round) {
    SopExpr candidate = expand(reduce(best, k), k, onset, round * 7 % k);
    make_irredundant(candidate, k);
    if (literal_count(candidate) < literal_count(best)) {
      best = std::move(candidate);
    } else {
      break;
    }
  }
  canonical_order(best);
  return best;
}

SopExpr minimize_expr(const SopExpr& expr, unsigned k) {
  if (expr.empty()) return expr;
  SopExpr out;
  if (k <= kExactMinimizeMaxVars) {
    out = exact_cover(onset_of(expr, k), k);
  } else {
    out = minimize_expr_heuristic(expr, k);
  }
  if (literal_count(out) > literal_count(expr)) return expr;
  return out;
}

SopExprList minimize(const SopExprList& exprs) {
  SopExprList out{exprs.k, {}};
  out.exprs.reserve(exprs.exprs.size());
  for (const auto& e : exprs.exprs) out.exprs.push_back(minimize_expr(e, exprs.k));
  return out;
}

}  // namespace hwbind
