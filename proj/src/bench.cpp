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

#include "hwbind/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "hwbind/bind.hpp"
#include "hwbind/error.hpp"
#include "hwbind/io.hpp"
#include "hwbind/minimize.hpp"
#include "hwbind/partition.hpp"

namespace hwbind {

namespace {

ParamTable random_table(std::size_t m, Rng& rng) {
  std::set<ParamTriple> seen;
  std::vector<ParamTriple> triples;
  while (triples.size() < m + 1) {
    ParamTriple t{static_cast<double>(rng.below(8)), static_cast<double>(rng.below(8)),
                  static_cast<double>(rng.below(8))};
    if (seen.insert(t).second) triples.push_back(t);
  }
  return ParamTable(std::move(triples));
}

std::uint64_t eval_all_literalwise(const SopExprList& phi, std::uint32_t x) noexcept {
  std::uint64_t out = 0;
  const std::size_t n = std::min<std::size_t>(phi.exprs.size(), 64);
  for (std::size_t i = 0; i < n; ++i) {
    if (eval_literalwise(phi.exprs[i], x)) out |= std::uint64_t{1} << i;
  }
  return out;
}

// Mean cost of one evaluation over all 2^k assignments. The budget is split
// into batches and the fastest batch wins, which filters out preemption.
double time_eval_ns(const SopExprList& phi, double min_ms) {
  using clock = std::chrono::steady_clock;
  constexpr int kBatches = 5;
  const std::uint32_t total = std::uint32_t{1} << phi.k;
  volatile std::uint64_t sink = 0;
  double best = 0.0;
  for (int b = 0; b < kBatches; ++b) {
    std::size_t evals = 0;
    const auto start = clock::now();
    auto now = start;
    do {
      for (std::uint32_t x = 0; x < total; ++x) sink = sink + eval_all_literalwise(phi, x);
      evals += total;
      now = clock::now();
    } while (std::chrono::duration<double, std::milli>(now - start).count() < min_ms / kBatches);
    const double ns =
        std::chrono::duration<double, std::nano>(now - start).count() / static_cast<double>(evals);
    if (b == 0 || ns < best) best = ns;
  }
  (void)sink;
  return best;
}

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

MeanStd mean_std(const std::vector<double>& v) {
  MeanStd r;
  if (v.empty()) return r;
  for (double x : v) r.mean += x;
  r.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return r;
}

}  // namespace

// Literal-at-a-time evaluation with && / || short circuits, the way the
// expressions run once emitted as C on a microcontroller. Cost tracks the
// literal count instead of the cube count.
bool eval_literalwise(const SopExpr& expr, std::uint32_t x) noexcept {
  for (const auto& cube : expr) {
    std::uint32_t rest = cube.care;
    bool ok = true;
    while (rest != 0 && ok) {
      const std::uint32_t bit = rest & (~rest + 1);
      ok = ((x ^ cube.polarity) & bit) == 0;
      rest ^= bit;
    }
    if (ok) return true;
  }
  return false;
}

BenchRow bench_one(unsigned k, std::size_t m, std::size_t rep, Seed seed, double min_timing_ms) {
  if (k < 1 || k > kMaxAssignmentBits) throw ParameterError("bench k out of range");
  if ((std::size_t{1} << k) < m + 1) throw CapacityError("2^k < m + 1");

  const Seed row_seed = derive_seed(derive_seed(seed, "bench", k), "bench.m", m * 1000 + rep);
  Rng rng(row_seed);
  const ParamTable table = random_table(m, rng);
  const BitString r = assignment_bits(static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << k)), k);
  AesKey enc_key{};
  auto key_bytes = rng.bytes(enc_key.size());
  std::copy(key_bytes.begin(), key_bytes.end(), enc_key.begin());

  const Partition part = build_partition(k, m, r, derive_seed(row_seed, "bench.partition"));
  const ToBinTable tb = build_tobin(table);
  const auto c = m;
  const EncodingTables tt = derive_truth_tables(table, part, tb, c);
  const SopExprList phi = minimize(synthesize_sop(tt.f));

  ProtectedBundle bundle;
  bundle.k = k;
  bundle.tobin = tb;
  bundle.phi_prime = minimize(synthesize_sop(tt.f_prime));
  bundle.hash_value = expr_hash(phi);
  bundle.encoded = encode_exprs(phi, enc_key, rng);
  Json j = bundle_to_json(bundle);
  j.erase("helper");

  BenchRow row;
  row.k = k;
  row.m = m;
  row.rep = rep;
  row.expr_literal_count = phi.literal_count();
  row.eval_time_ns = time_eval_ns(phi, min_timing_ms);
  row.bundle_bytes = j.dump().size();
  return row;
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  if (cfg.k_min > cfg.k_max || cfg.m_min > cfg.m_max) throw ParameterError("empty bench range");
  if (cfg.reps < 1) throw ParameterError("bench needs at least one rep");
  std::vector<BenchRow> rows;
  for (unsigned k = cfg.k_min; k <= cfg.k_max; ++k) {
    for (std::size_t m = cfg.m_min; m <= cfg.m_max; ++m) {
      if ((std::size_t{1} << k) < m + 1) continue;
      for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
        rows.push_back(bench_one(k, m, rep, cfg.seed, cfg.min_timing_ms));
      }
    }
  }
  return rows;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows) {
  std::map<std::pair<unsigned, std::size_t>, std::vector<const BenchRow*>> groups;
  for (const auto& r : rows) groups[{r.k, r.m}].push_back(&r);
  std::vector<BenchSummary> out;
  for (const auto& [key, members] : groups) {
    std::vector<double> lits, ns, bytes;
    for (const auto* r : members) {
      lits.push_back(static_cast<double>(r->expr_literal_count));
      ns.push_back(r->eval_time_ns);
      bytes.push_back(static_cast<double>(r->bundle_bytes));
    }
    const auto l = mean_std(lits), t = mean_std(ns);
    out.push_back({key.first, key.second, l.mean, l.stddev, t.mean, t.stddev, mean_std(bytes).mean});
  }
  return out;
}

std::vector<BenchKSummary> summarize_by_k(const std::vector<BenchRow>& rows) {
  std::map<unsigned, std::vector<BenchSummary>> per_k;
  for (const auto& s : summarize(rows)) per_k[s.k].push_back(s);
  std::vector<BenchKSummary> out;
  for (const auto& [k, sums] : per_k) {
    std::vector<double> lits, ns;
    for (const auto& s : sums) {
      lits.push_back(s.literal_mean);
      ns.push_back(s.eval_ns_mean);
    }
    const auto t = mean_std(ns);
    out.push_back({k, mean_std(lits).mean, t.mean, t.stddev});
  }
  return out;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "# hwbind-bench v1 (synthetic key material)\n";
  os << "k,m,rep,expr_literal_count,eval_time_ns,bundle_bytes\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%u,%zu,%zu,%zu,%.3f,%zu\n", r.k, r.m, r.rep,
                  r.expr_literal_count, r.eval_time_ns, r.bundle_bytes);
    os << buf;
  }
  return os.str();
}

std::string summary_csv(const std::vector<BenchSummary>& rows) {
  std::ostringstream os;
  os << "# hwbind-bench-summary v1\n";
  os << "k,m,literal_mean,literal_stddev,eval_ns_mean,eval_ns_stddev,bundle_bytes_mean\n";
  char buf[200];
  for (const auto& s : rows) {
    std::snprintf(buf, sizeof buf, "%u,%zu,%.3f,%.3f,%.3f,%.3f,%.1f\n", s.k, s.m, s.literal_mean,
                  s.literal_stddev, s.eval_ns_mean, s.eval_ns_stddev, s.bundle_bytes_mean);
    os << buf;
  }
  return os.str();
}

std::string bench_svg(const std::vector<BenchKSummary>& by_k) {
  const double width = 640, height = 400, margin = 60;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (by_k.empty()) {
    os << "</svg>\n";
    return os.str();
  }
  double y_max = 0.0;
  for (const auto& s : by_k) y_max = std::max(y_max, s.eval_ns_mean + s.eval_ns_stddev_over_m);
  if (y_max <= 0.0) y_max = 1.0;
  const double k_lo = by_k.front().k, k_hi = std::max(by_k.back().k, by_k.front().k + 1U);
  auto px = [&](double k) { return margin + (k - k_lo) / (k_hi - k_lo) * (width - 2 * margin); };
  auto py = [&](double v) { return height - margin - v / y_max * (height - 2 * margin); };

  std::ostringstream band_top, band_bottom, line;
  for (const auto& s : by_k) {
    band_top << px(s.k) << ',' << py(s.eval_ns_mean + s.eval_ns_stddev_over_m) << ' ';
    line << px(s.k) << ',' << py(s.eval_ns_mean) << ' ';
  }
  for (auto it = by_k.rbegin(); it != by_k.rend(); ++it) {
    band_bottom << px(it->k) << ','
                << py(std::max(0.0, it->eval_ns_mean - it->eval_ns_stddev_over_m)) << ' ';
  }
  os << "<polygon fill=\"#9ecae1\" opacity=\"0.6\" points=\"" << band_top.str() << band_bottom.str()
     << "\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"2\" points=\"" << line.str()
     << "\"/>\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
     << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
     << height - margin << "\" stroke=\"black\"/>\n";
  for (const auto& s : by_k) {
    os << "<text x=\"" << px(s.k) << "\" y=\"" << height - margin + 18
       << "\" font-size=\"12\" text-anchor=\"middle\">" << s.k << "</text>\n";
  }
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 15
     << "\" font-size=\"13\" text-anchor=\"middle\">k (assignment bits)</text>\n";
  os << "<text x=\"15\" y=\"" << height / 2 << "\" font-size=\"13\" transform=\"rotate(-90 15 "
     << height / 2 << ")\" text-anchor=\"middle\">mean eval time (ns)</text>\n";
  char label[64];
  std::snprintf(label, sizeof label, "%.0f", y_max);
  os << "<text x=\"" << margin - 5 << "\" y=\"" << margin + 4
     << "\" font-size=\"11\" text-anchor=\"end\">" << label << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace hwbind
