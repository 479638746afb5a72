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

// JSON documents exchanged between the CLI stages. All byte strings are
// lowercase hex; bit strings are packed big-endian (bit 0 = MSB of byte 0)
// before hex encoding.

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hwbind/attack.hpp"
#include "hwbind/bind.hpp"
#include "hwbind/enroll.hpp"
#include "hwbind/pid_sim.hpp"
#include "hwbind/sram_sim.hpp"

namespace hwbind {

using Json = nlohmann::json;

/// Biases quantized to 1e-4 and stored as one big-endian uint16 per cell.
Json device_to_json(const DeviceModel& d);
DeviceModel device_from_json(const Json& j);

/// Public half of an enrollment: window, mask parameters and lockers
/// (nonce || ciphertext, concatenated in mask order).
Json helper_to_json(const HelperData& h);
HelperData helper_from_json(const Json& j);

/// Vendor-only half: K and the reference string.
Json secret_to_json(const EnrollmentRecord& rec);
EnrollmentRecord record_from_json(const Json& helper, const Json& secret);

Json table_to_json(const ParamTable& t);
ParamTable table_from_json(const Json& j);

Json tobin_to_json(const ToBinTable& tb);
ToBinTable tobin_from_json(const Json& j);

Json bundle_to_json(const ProtectedBundle& b);
ProtectedBundle bundle_from_json(const Json& j);

Json attack_report_to_json(const AttackReport& r);

/// {"plant": {gain, tau, measured}, "controller": {dt, set_point, safe_lower, safe_upper}}
Json plant_to_json(const PlantModel& plant, const PidConfig& cfg);
void plant_from_json(const Json& j, PlantModel& plant, PidConfig& cfg);

Json triple_to_json(const ParamTriple& t);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace hwbind
