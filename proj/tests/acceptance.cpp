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

// Standalone acceptance run. Prints one [PASS]/[FAIL] line per criterion
// and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <string>

#include "hwbind/attack.hpp"
#include "hwbind/bench.hpp"
#include "hwbind/bind.hpp"
#include "hwbind/enroll.hpp"
#include "hwbind/fuzzy_extractor.hpp"
#include "hwbind/minimize.hpp"
#include "hwbind/pid_sim.hpp"
#include "hwbind/sram_sim.hpp"
#include "support.hpp"

using namespace hwbind;
namespace t = hwbind::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail.str("");
    if (!pass) detail << "; ";
    pass = false;
    detail << why;
  }
};

// ---------------------------------------------------------------- shared

// One enrolled default device, reused by the binding and security checks.
struct Enrolled {
  DeviceModel device;
  EnrollmentRecord record;
};

const Enrolled& enrolled() {
  static const std::unique_ptr<Enrolled> e = [] {
    DeviceModel d = new_device(20261015);
    EnrollmentRecord r = enroll(d, SamplingPlan{}, 256, 2, 18, 31337);
    return std::make_unique<Enrolled>(Enrolled{std::move(d), std::move(r)});
  }();
  return *e;
}

bool matches_psi(const SopExprList& l, const t::PsiSets& sets, const Partition& p) {
  if (l.exprs.size() != sets.size()) return false;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::uint32_t x = 0; x < 8; ++x) {
      if (t::oracle_eval(l.exprs[i], x, 3) != (sets[i].count(t::class_index(p, x)) > 0)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- 1

void worked_regression(Outcome& o) {
  const auto table = t::worked_table();
  const auto part = t::worked_partition();
  const auto tb = build_tobin(table);
  // The printed example numbers the fallback alternatives from the end of T.
  const auto tt = derive_truth_tables(table, part, tb, 2, FallbackRule::kWorkedExample);
  const auto phi = synthesize_sop(tt.f);
  const auto phi_p = synthesize_sop(tt.f_prime);
  if (!matches_psi(phi, t::kWorkedPhi, part)) o.fail("phi differs from the worked example");
  if (!matches_psi(phi_p, t::kWorkedPhiPrime, part)) o.fail("phi' differs from the worked example");
  if (!matches_psi(minimize(phi), t::kWorkedPhi, part)) o.fail("minimized phi differs");
  if (!matches_psi(minimize(phi_p), t::kWorkedPhiPrime, part)) o.fail("minimized phi' differs");
  if (!phi.exprs[1].empty()) o.fail("phi_1 is not 0");
  for (int i : {2, 7, 9}) {
    if (!phi_p.exprs[i].empty()) o.fail("phi'_" + std::to_string(i) + " is not 0");
  }
  if (o.pass) o.detail << "12 phi_i and 12 phi'_i match over all 8 assignments";
}

// ---------------------------------------------------------------- 2

void encoding_soundness(Outcome& o) {
  Rng rng(2);
  std::size_t violations = 0, checked = 0;
  for (int inst = 0; inst < 200; ++inst) {
    const unsigned k = 2 + static_cast<unsigned>(rng.below(9));  // 2..10
    const std::size_t max_m = std::min<std::size_t>((std::size_t{1} << k) - 1, 15);
    const std::size_t m = 3 + rng.below(max_m - 2);
    const std::size_t c = 2 + rng.below(m - 1);
    const auto table = t::random_int_table(rng, m, 16);
    // alternate between an independent partition and the library's
    Partition part;
    if (inst % 2 == 0) {
      part = t::random_partition(rng, k, m);
    } else {
      const auto r = assignment_bits(static_cast<std::uint32_t>(rng.below(1U << k)), k);
      part = build_partition(k, m, r, rng.next());
    }
    const auto tb = build_tobin(table);
    const auto rule = inst % 4 < 2 ? FallbackRule::kDefinition : FallbackRule::kWorkedExample;
    const auto tt = derive_truth_tables(table, part, tb, c, rule);
    const auto phi = synthesize_sop(tt.f);
    const auto phi_p = synthesize_sop(tt.f_prime);
    const auto phi_min = minimize(phi);
    const auto phi_p_min = minimize(phi_p);
    for (std::uint32_t x = 0; x < (1U << k); ++x) {
      const auto want = t::oracle_f(table, part, x, tb.n());
      const auto want_p = t::oracle_f_prime(table, part, c, x, tb.n(), rule);
      violations += t::oracle_eval_list(phi, x) != want;
      violations += t::oracle_eval_list(phi_min, x) != want;
      violations += t::oracle_eval_list(phi_p, x) != want_p;
      violations += t::oracle_eval_list(phi_p_min, x) != want_p;
      checked += 4;
    }
  }
  if (violations) o.fail(std::to_string(violations) + " violations");
  o.detail << (o.pass ? "" : " ") << "200 instances, " << checked << " evaluations, "
           << violations << " violations";
}

// ---------------------------------------------------------------- 3

void minimizer_equivalence(Outcome& o) {
  Rng rng(3);
  std::size_t bad_eq = 0, grew = 0;
  for (int inst = 0; inst < 200; ++inst) {
    const unsigned k = 1 + static_cast<unsigned>(rng.below(10));
    const std::size_t width = 1 + rng.below(12);
    const double density = rng.uniform01();
    TruthTable tt{k, static_cast<unsigned>(width), {}};
    for (std::uint32_t x = 0; x < (1U << k); ++x) {
      BitString row(width);
      for (std::size_t i = 0; i < width; ++i) row.set(i, rng.uniform01() < density);
      tt.rows.push_back(row);
    }
    const auto raw = synthesize_sop(tt);
    const auto min = minimize(raw);
    for (std::uint32_t x = 0; x < (1U << k); ++x) {
      if (t::oracle_eval_list(min, x) != tt.rows[x].to_string()) {
        ++bad_eq;
        break;
      }
    }
    grew += min.literal_count() > raw.literal_count();
  }
  if (bad_eq) o.fail(std::to_string(bad_eq) + " non-equivalent results");
  if (grew) o.fail(std::to_string(grew) + " literal-count increases");
  const SopExpr psi3{Cube{0b111, 0b011}, Cube{0b111, 0b111}};
  const auto got = canonical_text(minimize_expr(psi3, 3));
  if (got != "x0*x1") o.fail("psi_3 minimized to " + got);
  if (o.pass) o.detail << "200 tables equivalent, no growth, psi_3 -> x0*x1";
}

// ---------------------------------------------------------------- 4

void fuzzy_extractor(Outcome& o) {
  Rng rng(4);
  const Bytes key = rng.bytes(18);
  BitString b(16);
  for (std::size_t i = 0; i < 16; ++i) b.set(i, rng.below(2));
  HelperData h;
  h.sz = 16;
  h.hd = 2;
  h.key_len = key.size();
  h.sm = BitString(16, true);
  h.lockers = lock(key, b, 2, rng);

  std::size_t near = 0, near_fail = 0;
  for (std::uint32_t v = 0; v < (1U << 16); ++v) {
    const auto r = BitString::from_uint(v, 16);
    if (hamming_distance(r, b) > 2) continue;
    ++near;
    near_fail += unlock(h, r) != std::optional<Bytes>(key);
  }
  std::size_t far = 0, far_open = 0;
  while (far < 10000) {
    BitString r(16);
    for (std::size_t i = 0; i < 16; ++i) r.set(i, rng.below(2));
    if (hamming_distance(r, b) < 3) continue;
    ++far;
    far_open += unlock(h, r).has_value();
  }
  if (near != 137) o.fail("expected 137 near strings, saw " + std::to_string(near));
  if (near_fail) o.fail(std::to_string(near_fail) + " near strings failed");
  if (far_open) o.fail(std::to_string(far_open) + " far strings opened");
  o.detail << (o.pass ? "" : " ") << near - near_fail << "/" << near << " near unlock, "
           << far_open << "/" << far << " far unlock";
}

// ---------------------------------------------------------------- 5

void end_to_end(Outcome& o) {
  const auto& e = enrolled();
  const auto table = demo_table();
  const std::size_t c = 3;
  const auto bundle = bind(table, e.record, 8, c, 5);
  std::set<ParamTriple> allowed;
  for (std::size_t i = 1; i <= c; ++i) allowed.insert(table[i]);

  std::size_t genuine_ok = 0;
  for (Seed s = 0; s < 100; ++s) {
    genuine_ok += recover_values(bundle, startup(e.device, Temperature::kRoom, 5000 + s).bits) ==
                  table.optimal();
  }
  std::size_t clone_opt = 0, clone_in_range = 0;
  for (Seed s = 0; s < 100; ++s) {
    const auto clone = clone_device(e.device, 9000 + s);
    const auto v = recover_values(bundle, startup(clone, Temperature::kRoom, s).bits);
    clone_opt += v == table.optimal();
    clone_in_range += allowed.count(v);
  }
  if (genuine_ok < 99) o.fail("genuine optimal only " + std::to_string(genuine_ok) + "/100");
  if (clone_opt != 0) o.fail(std::to_string(clone_opt) + " clones got the optimum");
  if (clone_in_range != 100) o.fail(std::to_string(100 - clone_in_range) + " clones outside triples[1..c]");
  o.detail << (o.pass ? "" : " ") << "genuine " << genuine_ok << "/100 optimal; clones "
           << clone_opt << "/100 optimal, " << clone_in_range << "/100 in triples[1..c]";
}

// ---------------------------------------------------------------- 6

void security_regressions(Outcome& o) {
  const auto& e = enrolled();
  const auto km = DeviceKeyMaterial::from_key(e.record.key);
  const auto genuine = startup(e.device, Temperature::kRoom, 4242).bits;

  // corpus: worked example, demo fixture, and random integer tables
  struct Entry {
    ParamTable table;
    unsigned k;
    std::size_t c;
    bool demo;
  };
  std::vector<Entry> corpus;
  corpus.push_back({t::worked_table(), 3, 2, false});
  for (unsigned k : {4u, 6u, 8u, 10u}) {
    for (std::size_t c : {2u, 3u, 5u}) corpus.push_back({demo_table(), k, c, true});
  }
  Rng rng(6);
  for (int i = 0; i < 12; ++i) {
    const unsigned k = 3 + static_cast<unsigned>(rng.below(6));
    const std::size_t m = 3 + rng.below(std::min<std::size_t>((1U << k) - 3, 8));
    corpus.push_back({t::random_int_table(rng, m, 16), k, 2 + rng.below(m - 1), false});
  }

  std::size_t bundles = 0, demo_found = 0, demo_total = 0;
  for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
    const auto& en = corpus[idx];
    const auto bundle = bind(en.table, e.record, en.k, en.c, 100 + idx);
    ++bundles;
    const std::string tag = "bundle " + std::to_string(idx);

    const auto st = static_enumerate(bundle);
    if (st.s_prime.count(en.table.optimal())) o.fail(tag + ": optimum in S'");

    const auto phi = recover_exprs(bundle, km.enc_key);
    if (!phi) {
      o.fail(tag + ": phi did not decrypt");
      continue;
    }
    const auto r = clone_dynamic_attack(bundle, phi, demo_plant(), demo_config());
    if (r.difference.size() != en.table.m() - en.c + 1) {
      o.fail(tag + ": |S \\ S'| = " + std::to_string(r.difference.size()));
    }
    if (!r.difference.count(en.table.optimal())) o.fail(tag + ": optimum not in S \\ S'");
    if (en.demo) {
      ++demo_total;
      if (r.best_triple == en.table.optimal()) {
        ++demo_found;
      } else {
        o.fail(tag + ": attack missed the optimum");
      }
    }

    // one corrupted ciphertext byte sends recovery to phi'
    auto bad = bundle;
    bad.encoded.ciphertext[idx % bad.encoded.ciphertext.size()] ^= 0x01;
    const auto trace = recover_values_traced(bad, genuine);
    const auto expect = decode(bundle.tobin, eval(bundle.phi_prime, query_puf(km, en.k)));
    if (!trace.unlocked || trace.hash_matched || trace.values != expect) {
      o.fail(tag + ": corrupted ciphertext not routed to phi'");
    }
    if (recover_values(bundle, genuine) != en.table.optimal()) o.fail(tag + ": genuine recovery broke");
  }
  o.detail << (o.pass ? "" : " ") << bundles << " bundles; optimum never in S'; leaked-phi attack found the optimum in "
           << demo_found << "/" << demo_total << " demo bundles";
}

// ---------------------------------------------------------------- 7

void pid_behavior(Outcome& o) {
  const auto plant = demo_plant();
  const auto cfg = demo_config();
  const auto table = demo_table();
  std::vector<std::size_t> steps;
  std::size_t samples = 0;
  for (const auto& tr : table.triples()) {
    const auto c = cfg.with_gains(tr);
    const auto trace = simulate(plant, c, kDefaultHorizon);
    steps.push_back(trace.metrics.settling_steps);
    for (const auto& s : trace.samples) {
      ++samples;
      if (!(s.output >= c.safe_lower && s.output <= c.safe_upper)) {
        o.fail("clamp violated for " + to_string(tr));
        break;
      }
    }
  }
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i] == kNotSettled) {
      o.fail(to_string(table[i]) + " never settles");
    } else if (steps[0] == kNotSettled || steps[0] >= steps[i]) {
      o.fail(to_string(table[i]) + " settles no slower than the optimum");
    }
  }
  std::ostringstream s;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    s << (i ? "," : "") << (steps[i] == kNotSettled ? std::string("-") : std::to_string(steps[i]));
  }
  o.detail << (o.pass ? "" : " ") << "settling steps [" << s.str() << "], " << samples
           << " samples within clamp";
}

// ---------------------------------------------------------------- 8

void performance_trend(Outcome& o) {
  BenchConfig cfg;  // k 4..12, m 3..15, 3 reps
  const auto rows = run_bench(cfg);
  const auto by_k = summarize_by_k(rows);
  if (by_k.size() != 9) {
    o.fail("expected 9 k values");
    return;
  }
  std::printf("      k   literals     eval_ns  sd_over_m\n");
  for (const auto& s : by_k) {
    std::printf("     %2u %10.1f %11.1f %10.1f\n", s.k, s.literal_mean, s.eval_ns_mean,
                s.eval_ns_stddev_over_m);
  }
  for (std::size_t i = 0; i + 2 < by_k.size(); ++i) {
    const auto& a = by_k[i];
    const auto& b = by_k[i + 2];
    if (b.literal_mean < 2.0 * a.literal_mean) {
      o.fail("literals k=" + std::to_string(a.k) + "->" + std::to_string(b.k) + " less than doubled");
    }
    // superlinear: the ratio beats the linear ratio (k+2)/k
    if (b.eval_ns_mean / a.eval_ns_mean <= double(b.k) / double(a.k)) {
      o.fail("eval time k=" + std::to_string(a.k) + "->" + std::to_string(b.k) + " not superlinear");
    }
  }
  for (std::size_t i = 0; i < by_k.size(); ++i) {
    if (i + 1 < by_k.size() && by_k[i + 1].eval_ns_mean <= by_k[i].eval_ns_mean) {
      o.fail("eval time not increasing at k=" + std::to_string(by_k[i + 1].k));
    }
    const double step = i + 1 < by_k.size() ? by_k[i + 1].eval_ns_mean - by_k[i].eval_ns_mean
                                            : by_k[i].eval_ns_mean - by_k[i - 1].eval_ns_mean;
    if (by_k[i].eval_ns_stddev_over_m >= step) {
      o.fail("m effect at k=" + std::to_string(by_k[i].k) + " not below one k-step");
    }
  }
  const double lit_ratio = by_k.back().literal_mean / by_k.front().literal_mean;
  const double ns_ratio = by_k.back().eval_ns_mean / by_k.front().eval_ns_mean;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu rows; k=4->12 literals x%.0f, eval time x%.1f", rows.size(),
                lit_ratio, ns_ratio);
  o.detail << (o.pass ? "" : " ") << buf;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> all = {
      {1, "worked-example regression", 1.0, worked_regression},
      {2, "encoding soundness", 60.0, encoding_soundness},
      {3, "minimizer equivalence", 1e9, minimizer_equivalence},
      {4, "fuzzy extractor at sz=16, hd=2", 30.0, fuzzy_extractor},
      {5, "end-to-end binding", 300.0, end_to_end},
      {6, "security regressions", 1e9, security_regressions},
      {7, "PID behavior", 1e9, pid_behavior},
      {8, "performance trend", 600.0, performance_trend},
  };

  int failures = 0;
  for (const auto& c : all) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.limit_s) {
      char b[80];
      std::snprintf(b, sizeof b, "took %.2f s, limit %.0f s", secs, c.limit_s);
      o.fail(b);
    }
    failures += !o.pass;
    std::printf("[%s] criterion %d: %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
