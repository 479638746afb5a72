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

// Expression-size and evaluation-time benchmark over the assignment width k
// and the number of alternatives m.
//
// Runs in synthetic key-material mode: no PUF is enrolled, the anchor
// assignment r and the cipher key are drawn from the benchmark seed. Table
// values are integers in [0, 8) so toBin width stays at 4 bits for every m
// and only k and m vary between rows.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hwbind/random.hpp"
#include "hwbind/sop.hpp"

namespace hwbind {

struct BenchConfig {
  unsigned k_min = 4;
  unsigned k_max = 12;
  std::size_t m_min = 3;
  std::size_t m_max = 15;
  std::size_t reps = 3;
  Seed seed = 1;
  /// Minimum wall time spent timing each row (split into batches; the
  /// fastest batch is reported).
  double min_timing_ms = 2.0;
};

struct BenchRow {
  unsigned k = 0;
  std::size_t m = 0;
  std::size_t rep = 0;
  std::size_t expr_literal_count = 0;  // minimized phi
  double eval_time_ns = 0.0;           // mean time of one eval(phi, x)
  std::size_t bundle_bytes = 0;        // serialized bundle without helper data
};

struct BenchSummary {
  unsigned k = 0;
  std::size_t m = 0;
  double literal_mean = 0.0;
  double literal_stddev = 0.0;
  double eval_ns_mean = 0.0;
  double eval_ns_stddev = 0.0;
  double bundle_bytes_mean = 0.0;
};

/// Per-k aggregate over every m and rep (the error band is the spread
/// across m).
struct BenchKSummary {
  unsigned k = 0;
  double literal_mean = 0.0;
  double eval_ns_mean = 0.0;
  double eval_ns_stddev_over_m = 0.0;
};

/// Rows for every (k, m, rep) with 2^k >= m + 1, in that nesting order.
std::vector<BenchRow> run_bench(const BenchConfig& cfg);

// What the bench times: one literal test at a time, short-circuiting.
bool eval_literalwise(const SopExpr& expr, std::uint32_t x) noexcept;

/// Benchmarks one configuration.
BenchRow bench_one(unsigned k, std::size_t m, std::size_t rep, Seed seed, double min_timing_ms);

std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows);
std::vector<BenchKSummary> summarize_by_k(const std::vector<BenchRow>& rows);

/// "# hwbind-bench v1" comment line, then
/// k,m,rep,expr_literal_count,eval_time_ns,bundle_bytes
std::string bench_csv(const std::vector<BenchRow>& rows);
std::string summary_csv(const std::vector<BenchSummary>& rows);

/// Mean eval time per k with a +-1 stddev band across m.
std::string bench_svg(const std::vector<BenchKSummary>& by_k);

}  // namespace hwbind
