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

// hwbind: command-line driver for the device-binding pipeline.
//
//   simulate-device -> enroll -> bind -> run
//                                    \-> attack
//   bench
//
// Exit status: 0 success, 1 failed validation or pipeline error,
// 2 usage error (bad flags or bad parameter values).

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hwbind/attack.hpp"
#include "hwbind/bench.hpp"
#include "hwbind/bind.hpp"
#include "hwbind/enroll.hpp"
#include "hwbind/error.hpp"
#include "hwbind/io.hpp"
#include "hwbind/pid_sim.hpp"
#include "hwbind/sram_sim.hpp"

namespace {

using namespace hwbind;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

Seed fresh_seed() {
  std::random_device rd;
  return (static_cast<Seed>(rd()) << 32) ^ rd();
}

std::string triple_text(const ParamTriple& t) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g, %.17g)", t.kp, t.ki, t.kd);
  return buf;
}

void load_plant(const std::string& path, PlantModel& plant, PidConfig& cfg) {
  plant = demo_plant();
  cfg = demo_config();
  if (!path.empty()) plant_from_json(read_json_file(path), plant, cfg);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

// ---- simulate-device

struct SimulateArgs {
  std::optional<Seed> seed;
  std::size_t cells = DeviceDefaults::kCellCount;
  double stable_fraction = DeviceDefaults::kStableFraction;
  double epsilon = DeviceDefaults::kEpsilon;
  std::string clone_of;
  std::string out = "device.json";
};

int cmd_simulate_device(const SimulateArgs& a) {
  DeviceModel d = a.clone_of.empty()
                      ? new_device(*a.seed, a.cells, a.stable_fraction, a.epsilon)
                      : clone_device(device_from_json(read_json_file(a.clone_of)), *a.seed);
  write_json_file(a.out, device_to_json(d));
  std::cout << "wrote " << a.out << " (" << d.cell_count() << " cells)\n";
  return kExitOk;
}

// ---- enroll

struct EnrollArgs {
  std::string device;
  std::size_t sz = EnrollDefaults::kWindowBits;
  std::size_t hd = EnrollDefaults::kHammingTolerance;
  std::size_t samples = 1000;
  std::vector<std::string> temps{"ROOM"};
  double cutoff = 0.05;
  std::size_t trials = 200;
  std::size_t key_len = EnrollDefaults::kKeyLen;
  double threshold = EnrollDefaults::kStableThreshold;
  std::optional<Seed> seed;
  std::string helper_out = "helper.json";
  std::string secret_out = "secret.json";
};

int cmd_enroll(const EnrollArgs& a) {
  const DeviceModel device = device_from_json(read_json_file(a.device));
  SamplingPlan plan;
  plan.startups_per_temperature = a.samples;
  plan.temperatures.clear();
  for (const auto& t : a.temps) plan.temperatures.push_back(parse_temperature(t));

  const Seed seed = a.seed ? *a.seed : fresh_seed();
  EnrollOptions opts;
  opts.threshold = a.threshold;
  const EnrollmentRecord rec = enroll(device, plan, a.sz, a.hd, a.key_len, seed, opts);
  const auto report = verify_enrollment(device, rec, a.trials, a.cutoff, plan.temperatures,
                                        derive_seed(seed, "cli.verify"));

  std::cout << "window offset " << rec.offset << ", " << rec.sm.popcount() << "/" << rec.sz
            << " stable bits, " << rec.helper.nm() << " lockers\n";
  std::cout << "verification: " << report.failures << "/" << report.trials
            << " failures (rate " << report.failure_rate << ", cutoff " << a.cutoff << ") "
            << (report.pass ? "PASS" : "FAIL") << "\n";
  if (!report.pass) {
    std::cerr << "enrollment did not verify; try more samples, more temperatures, a larger "
                 "--hd or a different --sz\n";
    return kExitFailure;
  }
  write_json_file(a.helper_out, helper_to_json(rec.helper));
  write_json_file(a.secret_out, secret_to_json(rec));
  std::cout << "wrote " << a.helper_out << " and " << a.secret_out << "\n";
  return kExitOk;
}

// ---- bind

struct BindArgs {
  std::string table;
  std::string secret;
  std::string helper;
  std::string enc_secret;
  std::string enc_helper;
  unsigned k = 0;
  std::size_t c = 0;
  std::optional<Seed> seed;
  bool no_minimize = false;
  bool validate = false;
  std::string plant;
  std::string out = "bundle.json";
};

int cmd_bind(const BindArgs& a) {
  const ParamTable table = table_from_json(read_json_file(a.table));
  if (a.validate) {
    PlantModel plant;
    PidConfig cfg;
    load_plant(a.plant, plant, cfg);
    const auto report = validate_table(plant, table, cfg);
    for (const auto& p : report.problems) std::cerr << "table: " << p << "\n";
    if (!report.pass) return kExitFailure;
  }
  const EnrollmentRecord rec =
      record_from_json(read_json_file(a.helper), read_json_file(a.secret));
  std::optional<EnrollmentRecord> enc_rec;
  BindOptions opts;
  opts.minimize = !a.no_minimize;
  if (!a.enc_secret.empty()) {
    if (a.enc_helper.empty()) throw ParameterError("--enc-secret needs --enc-helper");
    enc_rec = record_from_json(read_json_file(a.enc_helper), read_json_file(a.enc_secret));
    opts.enc_record = &*enc_rec;
  }
  const Seed seed = a.seed ? *a.seed : fresh_seed();
  const std::size_t c = a.c == 0 ? table.m() : a.c;
  const ProtectedBundle bundle = bind(table, rec, a.k, c, seed, opts);
  write_json_file(a.out, bundle_to_json(bundle));
  std::cout << "wrote " << a.out << " (k=" << bundle.k << ", " << bundle.phi_prime.exprs.size()
            << " expressions, " << bundle.phi_prime.literal_count() << " literals in phi')\n";
  return kExitOk;
}

// ---- run

struct RunArgs {
  std::string bundle;
  std::string device;
  std::string temperature = "ROOM";
  std::optional<Seed> noise_seed;
  std::size_t steps = kDefaultHorizon;
  std::string plant;
  std::string trace_out;
};

int cmd_run(const RunArgs& a) {
  const ProtectedBundle bundle = bundle_from_json(read_json_file(a.bundle));
  const DeviceModel device = device_from_json(read_json_file(a.device));
  const Seed noise = a.noise_seed ? *a.noise_seed : fresh_seed();
  const StartupSample s = startup(device, parse_temperature(a.temperature), noise);
  const RecoveryTrace rt = recover_values_traced(bundle, s.bits);

  PlantModel plant;
  PidConfig cfg;
  load_plant(a.plant, plant, cfg);
  const PidTrace trace = simulate(plant, cfg.with_gains(rt.values), a.steps);
  if (!a.trace_out.empty()) write_text_file(a.trace_out, trace_csv(trace));

  std::cout << "puf unlocked: " << (rt.unlocked ? "yes" : "no") << "\n";
  std::cout << "expression source: " << (rt.hash_matched ? "phi" : "phi'") << "\n";
  std::cout << "assignment: " << rt.assignment.to_string() << "\n";
  std::cout << "triple: " << triple_text(rt.values) << "\n";
  if (trace.metrics.settling_steps == kNotSettled) {
    std::cout << "settling_steps: not settled\n";
  } else {
    std::cout << "settling_steps: " << trace.metrics.settling_steps << "\n";
  }
  std::cout << "overshoot_ratio: " << trace.metrics.overshoot_ratio << "\n";
  std::cout << "ise: " << trace.metrics.integral_squared_error << "\n";
  return kExitOk;
}

// ---- attack

struct AttackArgs {
  std::string mode = "static";
  std::string bundle;
  std::string secret;
  std::string enc_secret;
  std::string phi;
  std::string plant;
  std::size_t horizon = kDefaultHorizon;
  std::string out;
};

int cmd_attack(const AttackArgs& a) {
  const ProtectedBundle bundle = bundle_from_json(read_json_file(a.bundle));
  AttackReport report;
  if (a.mode == "static") {
    report = static_enumerate(bundle);
  } else {
    std::optional<SopExprList> phi;
    if (!a.phi.empty()) {
      phi = parse_canonical(read_text(a.phi), bundle.k);
      if (!phi) throw FormatError("cannot parse expressions in " + a.phi);
    } else if (!a.secret.empty()) {
      const Json helper = helper_to_json(bundle.helper);
      const EnrollmentRecord rec = record_from_json(helper, read_json_file(a.secret));
      DeviceKeyMaterial km = DeviceKeyMaterial::from_key(rec.key);
      if (bundle.enc_helper) {
        if (a.enc_secret.empty()) throw ParameterError("bundle is two-source; pass --enc-secret");
        const EnrollmentRecord enc = record_from_json(helper_to_json(*bundle.enc_helper),
                                                      read_json_file(a.enc_secret));
        km = DeviceKeyMaterial::from_keys(enc.key, rec.key);
      }
      phi = recover_exprs(bundle, km.enc_key);
    }
    PlantModel plant;
    PidConfig cfg;
    load_plant(a.plant, plant, cfg);
    report = clone_dynamic_attack(bundle, phi, plant, cfg, a.horizon);
  }
  const Json j = attack_report_to_json(report);
  if (!a.out.empty()) write_json_file(a.out, j);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

// ---- bench

struct BenchArgs {
  BenchConfig cfg;
  std::string out = "bench.csv";
  std::string summary_out;
  std::string plot;
};

int cmd_bench(const BenchArgs& a) {
  const auto rows = run_bench(a.cfg);
  write_text_file(a.out, bench_csv(rows));
  const auto summary = summarize(rows);
  if (!a.summary_out.empty()) write_text_file(a.summary_out, summary_csv(summary));
  const auto by_k = summarize_by_k(rows);
  if (!a.plot.empty()) write_text_file(a.plot, bench_svg(by_k));
  for (const auto& s : by_k) {
    std::printf("k=%2u  literals %10.1f  eval %10.1f ns  (+-%.1f over m)\n", s.k, s.literal_mean,
                s.eval_ns_mean, s.eval_ns_stddev_over_m);
  }
  std::cout << "wrote " << rows.size() << " rows to " << a.out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bind parameter tables to simulated SRAM-PUF devices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hwbind 1.0");

  auto seed_option = [](CLI::App* sub, std::optional<Seed>& target, const std::string& name,
                        const std::string& help) {
    return sub->add_option_function<Seed>(
        name, [&target](const Seed& v) { target = v; }, help);
  };

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate-device", "Create a simulated SRAM device");
  seed_option(c_sim, sim.seed, "--seed", "device seed (or clone seed with --clone-of)")
      ->required();
  c_sim->add_option("--cells", sim.cells, "number of SRAM cells")->check(CLI::PositiveNumber);
  c_sim->add_option("--stable-fraction", sim.stable_fraction)->check(CLI::Range(0.0, 1.0));
  c_sim->add_option("--epsilon", sim.epsilon, "flip probability of stable cells")
      ->check(CLI::Range(0.0, 0.5));
  c_sim->add_option("--clone-of", sim.clone_of, "device file to clone")->check(CLI::ExistingFile);
  c_sim->add_option("--out", sim.out);

  EnrollArgs en;
  auto* c_en = app.add_subcommand("enroll", "Enroll a device and write helper data");
  c_en->add_option("--device", en.device)->required()->check(CLI::ExistingFile);
  c_en->add_option("--sz", en.sz, "PUF window size in bits")->check(CLI::PositiveNumber);
  c_en->add_option("--hd", en.hd, "Hamming-distance tolerance");
  c_en->add_option("--samples", en.samples, "startups per temperature")
      ->check(CLI::Range(2, 1000000));
  c_en->add_option("--temps", en.temps, "temperature labels (LOW, ROOM, HIGH)")->delimiter(',');
  c_en->add_option("--cutoff", en.cutoff, "maximum verification failure rate")
      ->check(CLI::Range(0.0, 1.0));
  c_en->add_option("--trials", en.trials, "verification startups")->check(CLI::PositiveNumber);
  c_en->add_option("--key-len", en.key_len, "identifier length in bytes");
  c_en->add_option("--threshold", en.threshold)->check(CLI::Range(0.5, 1.0));
  seed_option(c_en, en.seed, "--seed", "enrollment seed");
  c_en->add_option("--helper-out", en.helper_out);
  c_en->add_option("--secret-out", en.secret_out);

  BindArgs bi;
  auto* c_bi = app.add_subcommand("bind", "Encode a parameter table for one device");
  c_bi->add_option("--table", bi.table)->required()->check(CLI::ExistingFile);
  c_bi->add_option("--secret", bi.secret)->required()->check(CLI::ExistingFile);
  c_bi->add_option("--helper", bi.helper)->required()->check(CLI::ExistingFile);
  c_bi->add_option("--enc-secret", bi.enc_secret)->check(CLI::ExistingFile);
  c_bi->add_option("--enc-helper", bi.enc_helper)->check(CLI::ExistingFile);
  c_bi->add_option("--k", bi.k, "assignment bits")->required();
  c_bi->add_option("--c", bi.c, "number of alternatives reachable on a clone (default m)");
  seed_option(c_bi, bi.seed, "--seed", "partition and nonce seed");
  c_bi->add_flag("--no-minimize", bi.no_minimize, "keep full minterm expressions");
  c_bi->add_flag("--validate", bi.validate, "check the table against the plant first");
  c_bi->add_option("--plant", bi.plant, "plant file (default: demo plant)")
      ->check(CLI::ExistingFile);
  c_bi->add_option("--out", bi.out);

  RunArgs ru;
  auto* c_ru = app.add_subcommand("run", "Recover the triple on a device and simulate the loop");
  c_ru->add_option("--bundle", ru.bundle)->required()->check(CLI::ExistingFile);
  c_ru->add_option("--device", ru.device)->required()->check(CLI::ExistingFile);
  c_ru->add_option("--temperature", ru.temperature);
  seed_option(c_ru, ru.noise_seed, "--noise-seed", "startup noise seed");
  c_ru->add_option("--steps", ru.steps)->check(CLI::PositiveNumber);
  c_ru->add_option("--plant", ru.plant)->check(CLI::ExistingFile);
  c_ru->add_option("--trace-out", ru.trace_out, "CSV trace file");

  AttackArgs at;
  auto* c_at = app.add_subcommand("attack", "Run an attacker model against a bundle");
  c_at->add_option("--mode", at.mode)->check(CLI::IsMember({"static", "clone"}));
  c_at->add_option("--bundle", at.bundle)->required()->check(CLI::ExistingFile);
  c_at->add_option("--secret", at.secret, "leaked secret file (yields phi)")
      ->check(CLI::ExistingFile);
  c_at->add_option("--enc-secret", at.enc_secret)->check(CLI::ExistingFile);
  c_at->add_option("--phi", at.phi, "leaked phi in canonical text")->check(CLI::ExistingFile);
  c_at->add_option("--plant", at.plant)->check(CLI::ExistingFile);
  c_at->add_option("--horizon", at.horizon)->check(CLI::PositiveNumber);
  c_at->add_option("--out", at.out);

  BenchArgs be;
  auto* c_be = app.add_subcommand("bench", "Expression size and evaluation time over k and m");
  c_be->add_option("--k-min", be.cfg.k_min)->check(CLI::Range(1, 20));
  c_be->add_option("--k-max", be.cfg.k_max)->check(CLI::Range(1, 20));
  c_be->add_option("--m-min", be.cfg.m_min)->check(CLI::Range(3, 100));
  c_be->add_option("--m-max", be.cfg.m_max)->check(CLI::Range(3, 100));
  c_be->add_option("--reps", be.cfg.reps)->check(CLI::PositiveNumber);
  c_be->add_option("--seed", be.cfg.seed);
  c_be->add_option("--min-timing-ms", be.cfg.min_timing_ms)->check(CLI::NonNegativeNumber);
  c_be->add_option("--out", be.out);
  c_be->add_option("--summary-out", be.summary_out);
  c_be->add_option("--plot", be.plot, "SVG plot of eval time over k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c_sim) return cmd_simulate_device(sim);
    if (*c_en) return cmd_enroll(en);
    if (*c_bi) return cmd_bind(bi);
    if (*c_ru) return cmd_run(ru);
    if (*c_at) return cmd_attack(at);
    if (*c_be) return cmd_bench(be);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
