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

#include "hwbind/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hwbind/error.hpp"

namespace hwbind {

namespace {

constexpr int kDocVersion = 1;

void expect_format(const Json& j, const char* format) {
  if (!j.is_object()) throw FormatError(std::string("expected a JSON object for ") + format);
  if (j.contains("format") && j.at("format") != format) {
    throw FormatError(std::string("document is not a ") + format);
  }
}

template <typename T>
T field(const Json& j, const char* name) {
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field '") + name + "': " + e.what());
  }
}

std::string bits_hex(const BitString& bits) { return to_hex(bits.pack()); }

BitString bits_from_hex(const std::string& hex, std::size_t size) {
  auto bytes = from_hex(hex);
  if (bytes.size() != (size + 7) / 8) throw FormatError("packed bit string has wrong length");
  return BitString::unpack(bytes, size);
}

}  // namespace

Json device_to_json(const DeviceModel& d) {
  Bytes packed;
  packed.reserve(2 * d.cell_count());
  for (double b : d.bias()) {
    auto q = static_cast<std::uint16_t>(std::lround(b * 10000.0));
    packed.push_back(static_cast<std::uint8_t>(q >> 8));
    packed.push_back(static_cast<std::uint8_t>(q & 0xFF));
  }
  return Json{{"format", "hwbind.device"},
              {"version", kDocVersion},
              {"device_seed", d.device_seed()},
              {"cell_count", d.cell_count()},
              {"stable_fraction", d.stable_fraction()},
              {"epsilon", d.epsilon()},
              {"bias", to_hex(packed)}};
}

DeviceModel device_from_json(const Json& j) {
  expect_format(j, "hwbind.device");
  const auto cells = field<std::size_t>(j, "cell_count");
  const auto packed = from_hex(field<std::string>(j, "bias"));
  if (packed.size() != 2 * cells) throw FormatError("bias length does not match cell_count");
  std::vector<double> bias(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const unsigned q = (unsigned{packed[2 * i]} << 8) | packed[2 * i + 1];
    if (q > 10000) throw FormatError("bias above 1.0");
    bias[i] = static_cast<double>(q) / 10000.0;
  }
  return DeviceModel(field<Seed>(j, "device_seed"), field<double>(j, "stable_fraction"),
                     field<double>(j, "epsilon"), std::move(bias));
}

Json helper_to_json(const HelperData& h) {
  Bytes lockers;
  lockers.reserve(h.lockers.size() * (16 + h.key_len + kLockerCheckLen));
  for (const auto& l : h.lockers) {
    lockers.insert(lockers.end(), l.nonce.begin(), l.nonce.end());
    lockers.insert(lockers.end(), l.ciphertext.begin(), l.ciphertext.end());
  }
  return Json{{"format", "hwbind.helper"},
              {"version", kDocVersion},
              {"offset", h.offset},
              {"sz", h.sz},
              {"hd", h.hd},
              {"nm", h.nm()},
              {"key_len", h.key_len},
              {"check_len", kLockerCheckLen},
              {"sm", bits_hex(h.sm)},
              {"lockers", to_hex(lockers)}};
}

HelperData helper_from_json(const Json& j) {
  expect_format(j, "hwbind.helper");
  HelperData h;
  h.offset = field<std::size_t>(j, "offset");
  h.sz = field<std::size_t>(j, "sz");
  h.hd = field<std::size_t>(j, "hd");
  h.key_len = field<std::size_t>(j, "key_len");
  h.sm = bits_from_hex(field<std::string>(j, "sm"), h.sz);
  const auto nm = field<std::size_t>(j, "nm");
  if (nm != mask_count(h.sz, h.hd)) throw FormatError("nm does not equal C(sz, hd)");
  if (j.contains("check_len") && field<std::size_t>(j, "check_len") != kLockerCheckLen) {
    throw FormatError("unsupported locker check length");
  }
  const auto raw = from_hex(field<std::string>(j, "lockers"));
  const std::size_t stride = Nonce{}.size() + h.key_len + kLockerCheckLen;
  if (raw.size() != nm * stride) throw FormatError("locker blob has wrong length");
  h.lockers.resize(nm);
  for (std::size_t i = 0; i < nm; ++i) {
    auto it = raw.begin() + static_cast<std::ptrdiff_t>(i * stride);
    std::copy_n(it, h.lockers[i].nonce.size(), h.lockers[i].nonce.begin());
    it += static_cast<std::ptrdiff_t>(h.lockers[i].nonce.size());
    h.lockers[i].ciphertext.assign(it, it + static_cast<std::ptrdiff_t>(h.key_len + kLockerCheckLen));
  }
  return h;
}

Json secret_to_json(const EnrollmentRecord& rec) {
  return Json{{"format", "hwbind.secret"},
              {"version", kDocVersion},
              {"offset", rec.offset},
              {"sz", rec.sz},
              {"key", to_hex(rec.key)},
              {"b", bits_hex(rec.b)},
              {"sm", bits_hex(rec.sm)}};
}

EnrollmentRecord record_from_json(const Json& helper, const Json& secret) {
  expect_format(secret, "hwbind.secret");
  EnrollmentRecord rec;
  rec.helper = helper_from_json(helper);
  rec.offset = field<std::size_t>(secret, "offset");
  rec.sz = field<std::size_t>(secret, "sz");
  if (rec.offset != rec.helper.offset || rec.sz != rec.helper.sz) {
    throw FormatError("secret record does not belong to this helper data");
  }
  rec.key = from_hex(field<std::string>(secret, "key"));
  if (rec.key.size() != rec.helper.key_len) throw FormatError("key length mismatch");
  rec.b = bits_from_hex(field<std::string>(secret, "b"), rec.sz);
  rec.sm = bits_from_hex(field<std::string>(secret, "sm"), rec.sz);
  return rec;
}

Json triple_to_json(const ParamTriple& t) { return Json::array({t.kp, t.ki, t.kd}); }

namespace {
ParamTriple triple_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw FormatError("a triple is an array of three numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Json triples_to_json(const std::set<ParamTriple>& s) {
  Json a = Json::array();
  for (const auto& t : s) a.push_back(triple_to_json(t));
  return a;
}
}  // namespace

Json table_to_json(const ParamTable& t) {
  Json a = Json::array();
  for (const auto& tr : t.triples()) a.push_back(triple_to_json(tr));
  return Json{{"format", "hwbind.table"}, {"triples", a}};
}

ParamTable table_from_json(const Json& j) {
  expect_format(j, "hwbind.table");
  if (!j.contains("triples") || !j.at("triples").is_array()) {
    throw FormatError("table needs a 'triples' array");
  }
  std::vector<ParamTriple> triples;
  for (const auto& t : j.at("triples")) triples.push_back(triple_from_json(t));
  return ParamTable(std::move(triples));
}

Json tobin_to_json(const ToBinTable& tb) {
  Json j{{"mode", tb.mode() == ToBinMode::kInteger ? "integer" : "index"}, {"n", tb.n()}};
  if (tb.mode() == ToBinMode::kIndex) j["values"] = tb.index_values();
  return j;
}

ToBinTable tobin_from_json(const Json& j) {
  const auto mode = field<std::string>(j, "mode");
  const auto n = field<unsigned>(j, "n");
  if (mode == "integer") return ToBinTable(ToBinMode::kInteger, n);
  if (mode == "index") return ToBinTable(ToBinMode::kIndex, n, field<std::vector<double>>(j, "values"));
  throw FormatError("unknown toBin mode '" + mode + "'");
}

Json bundle_to_json(const ProtectedBundle& b) {
  Json j{{"format", "hwbind.bundle"},
         {"version", b.format_version},
         {"k", b.k},
         {"tobin", tobin_to_json(b.tobin)},
         {"phi_prime", canonical_text(b.phi_prime)},
         {"hashValue", to_hex(b.hash_value)},
         {"nonce", to_hex(b.encoded.nonce)},
         {"encodedExprs", to_hex(b.encoded.ciphertext)},
         {"helper", helper_to_json(b.helper)}};
  if (b.enc_helper) j["enc_helper"] = helper_to_json(*b.enc_helper);
  return j;
}

ProtectedBundle bundle_from_json(const Json& j) {
  expect_format(j, "hwbind.bundle");
  ProtectedBundle b;
  b.format_version = field<int>(j, "version");
  if (b.format_version != kBundleFormatVersion) {
    throw FormatError("unsupported bundle version " + std::to_string(b.format_version));
  }
  b.k = field<unsigned>(j, "k");
  b.tobin = tobin_from_json(j.at("tobin"));
  auto phi_prime = parse_canonical(field<std::string>(j, "phi_prime"), b.k);
  if (!phi_prime) throw FormatError("phi_prime is not valid canonical text");
  if (phi_prime->exprs.size() != 3 * b.tobin.n()) {
    throw FormatError("phi_prime has the wrong number of expressions");
  }
  b.phi_prime = std::move(*phi_prime);

  auto hash = from_hex(field<std::string>(j, "hashValue"));
  auto nonce = from_hex(field<std::string>(j, "nonce"));
  if (hash.size() != b.hash_value.size() || nonce.size() != b.encoded.nonce.size()) {
    throw FormatError("hashValue or nonce has the wrong length");
  }
  std::copy(hash.begin(), hash.end(), b.hash_value.begin());
  std::copy(nonce.begin(), nonce.end(), b.encoded.nonce.begin());
  b.encoded.ciphertext = from_hex(field<std::string>(j, "encodedExprs"));
  b.helper = helper_from_json(j.at("helper"));
  if (j.contains("enc_helper")) b.enc_helper = helper_from_json(j.at("enc_helper"));
  return b;
}

Json attack_report_to_json(const AttackReport& r) {
  Json j{{"format", "hwbind.attack"},
         {"scenario", r.scenario == AttackScenario::kStatic ? "static" : "clone_dynamic"},
         {"S_prime", triples_to_json(r.s_prime)},
         {"effort",
          {{"expression_evaluations", r.effort.expression_evaluations},
           {"simulations", r.effort.simulations}}}};
  if (r.scenario == AttackScenario::kCloneDynamic) {
    j["S"] = triples_to_json(r.s);
    j["S_minus_S_prime"] = triples_to_json(r.difference);
  }
  j["best_triple"] = r.best_triple ? triple_to_json(*r.best_triple) : Json(nullptr);
  j["best_settling_steps"] = r.best_settling_steps ? Json(*r.best_settling_steps) : Json(nullptr);
  return j;
}

Json plant_to_json(const PlantModel& plant, const PidConfig& cfg) {
  return Json{{"format", "hwbind.plant"},
              {"plant", {{"gain", plant.gain}, {"tau", plant.tau}, {"measured", plant.measured}}},
              {"controller",
               {{"dt", cfg.dt},
                {"set_point", cfg.set_point},
                {"safe_lower", cfg.safe_lower},
                {"safe_upper", cfg.safe_upper}}}};
}

void plant_from_json(const Json& j, PlantModel& plant, PidConfig& cfg) {
  expect_format(j, "hwbind.plant");
  const auto& p = j.at("plant");
  plant.gain = field<double>(p, "gain");
  plant.tau = field<double>(p, "tau");
  plant.measured = p.value("measured", 0.0);
  const auto& c = j.at("controller");
  cfg.dt = field<double>(c, "dt");
  cfg.set_point = field<double>(c, "set_point");
  cfg.safe_lower = field<double>(c, "safe_lower");
  cfg.safe_upper = field<double>(c, "safe_upper");
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace hwbind
