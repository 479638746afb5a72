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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hwbind/bench.hpp"
#include "hwbind/error.hpp"
#include "hwbind/minimize.hpp"
#include "support.hpp"

namespace hwbind {
namespace {

BenchConfig small() {
  BenchConfig cfg;
  cfg.k_min = 2;
  cfg.k_max = 5;
  cfg.m_min = 3;
  cfg.m_max = 5;
  cfg.reps = 2;
  cfg.min_timing_ms = 0.1;
  return cfg;
}

TEST(Bench, RowsCoverFeasibleGrid) {
  const auto rows = run_bench(small());
  // k=2 only fits m=3 (2^k >= m + 1); k=3..5 fit all three m values.
  EXPECT_EQ(rows.size(), 2u * (1 + 3 * 3));
  EXPECT_EQ(rows.front().k, 2u);
  EXPECT_EQ(rows.front().m, 3u);
  for (const auto& r : rows) {
    EXPECT_GE(std::size_t{1} << r.k, r.m + 1);
    EXPECT_GT(r.expr_literal_count, 0u);
    EXPECT_GT(r.eval_time_ns, 0.0);
    EXPECT_GT(r.bundle_bytes, 0u);
  }
}

TEST(Bench, SameSeedSameLiterals) {
  const auto a = bench_one(6, 5, 0, 9, 0.05);
  const auto b = bench_one(6, 5, 0, 9, 0.05);
  EXPECT_EQ(a.expr_literal_count, b.expr_literal_count);
  EXPECT_EQ(a.bundle_bytes, b.bundle_bytes);
  const auto c = bench_one(6, 5, 1, 9, 0.05);
  EXPECT_EQ(c.rep, 1u);
}

TEST(Bench, LiteralCountGrowsWithK) {
  double prev = 0;
  for (unsigned k = 4; k <= 10; k += 2) {
    double sum = 0;
    for (std::size_t rep = 0; rep < 3; ++rep) sum += bench_one(k, 5, rep, 1, 0.05).expr_literal_count;
    EXPECT_GT(sum, prev) << k;
    prev = sum;
  }
}

TEST(Bench, Summaries) {
  std::vector<BenchRow> rows{{4, 3, 0, 10, 100, 50}, {4, 3, 1, 20, 300, 70},
                             {4, 5, 0, 30, 500, 90}, {5, 3, 0, 40, 700, 110}};
  const auto s = summarize(rows);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s[0].literal_mean, 15);
  EXPECT_DOUBLE_EQ(s[0].eval_ns_mean, 200);
  EXPECT_NEAR(s[0].eval_ns_stddev, std::sqrt(20000.0), 1e-9);  // sample stddev
  EXPECT_DOUBLE_EQ(s[0].bundle_bytes_mean, 60);
  EXPECT_DOUBLE_EQ(s[1].eval_ns_stddev, 0.0);

  const auto byk = summarize_by_k(rows);
  ASSERT_EQ(byk.size(), 2u);
  EXPECT_EQ(byk[0].k, 4u);
  // per-m means are 200 and 500
  EXPECT_DOUBLE_EQ(byk[0].eval_ns_mean, 350);
  EXPECT_NEAR(byk[0].eval_ns_stddev_over_m, std::sqrt(45000.0), 1e-9);
}

TEST(Bench, CsvAndSvg) {
  std::vector<BenchRow> rows{{4, 3, 0, 10, 123.5, 50}};
  const auto csv = bench_csv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# hwbind-bench v1", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line, "k,m,rep,expr_literal_count,eval_time_ns,bundle_bytes");
  std::getline(in, line);
  EXPECT_EQ(line, "4,3,0,10,123.500,50");

  const auto sum = summary_csv(summarize(rows));
  EXPECT_EQ(sum.rfind("# hwbind-bench-summary v1", 0), 0u);

  const auto svg = bench_svg(summarize_by_k(rows));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Bench, LiteralwiseEvalAgreesWithOracle) {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned k = 1 + static_cast<unsigned>(rng.below(8));
    TruthTable tt{k, 4, {}};
    for (std::uint32_t x = 0; x < (1U << k); ++x) {
      BitString row(4);
      for (std::size_t i = 0; i < 4; ++i) row.set(i, rng.below(2) == 1);
      tt.rows.push_back(row);
    }
    const auto phi = minimize(synthesize_sop(tt));
    for (const auto& e : phi.exprs) {
      for (std::uint32_t x = 0; x < (1U << k); ++x) {
        EXPECT_EQ(eval_literalwise(e, x), testing::oracle_eval(e, x, k));
      }
    }
  }
}

TEST(Bench, BadConfig) {
  auto cfg = small();
  cfg.k_min = 6;
  cfg.k_max = 5;
  EXPECT_THROW(run_bench(cfg), ParameterError);
  EXPECT_THROW(bench_one(2, 5, 0, 1, 0.1), CapacityError);
}

}  // namespace
}  // namespace hwbind
