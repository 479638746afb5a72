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

#pragma once

#include <cstddef>
#include <vector>

#include "hwbind/bitstring.hpp"
#include "hwbind/fuzzy_extractor.hpp"
#include "hwbind/random.hpp"
#include "hwbind/sram_sim.hpp"

namespace hwbind {

struct EnrollDefaults {
  static constexpr std::size_t kWindowBits = 256;   // 32 bytes
  static constexpr std::size_t kKeyLen = 18;
  static constexpr std::size_t kHammingTolerance = 2;
  static constexpr double kStableThreshold = 0.999;
};

struct SamplingPlan {
  std::size_t startups_per_temperature = 1000;
  std::vector<Temperature> temperatures{Temperature::kRoom};

  std::size_t total() const noexcept {
    return startups_per_temperature * temperatures.size();
  }
};

struct StableWindow {
  std::size_t offset = 0;
  BitString sm;  // 1 = stable
  BitString b;   // per-bit majority, unstable bits zeroed
};

/// Reference data produced once per device. `key` is the vendor secret; the
/// rest (via `helper`) may ship with the software.
struct EnrollmentRecord {
  std::size_t offset = 0;
  std::size_t sz = 0;
  BitString sm;
  BitString b;
  HelperData helper;
  Bytes key;

  friend bool operator==(const EnrollmentRecord&, const EnrollmentRecord&) = default;
};

struct EnrollOptions {
  double threshold = EnrollDefaults::kStableThreshold;
  std::uint64_t mask_cap = kDefaultMaskCap;
};

/// A bit is stable iff its majority value occurs in at least `threshold` of
/// the samples. Picks the window of `sz` bits with the most stable bits,
/// lowest offset on ties.
StableWindow find_stable_window(std::span<const StartupSample> samples,
                                std::size_t sz, double threshold);

/// Samples the device per `plan`, locates the stable window, draws a random
/// K of `key_len` bytes and locks it under every mask. All randomness flows
/// from `seed`.
EnrollmentRecord enroll(const DeviceModel& device, const SamplingPlan& plan,
                        std::size_t sz, std::size_t hd, std::size_t key_len,
                        Seed seed, const EnrollOptions& options = {});

struct VerificationReport {
  std::size_t trials = 0;
  std::size_t failures = 0;
  double failure_rate = 0.0;
  bool pass = false;
};

/// Window of a full startup reading as seen by `helper`, before masking.
BitString puf_window(const HelperData& helper, const BitString& startup_bits);

/// `trials` fresh startups, round-robin over `temperatures`; a trial fails
/// when the unlocked key differs from rec.key.
VerificationReport verify_enrollment(const DeviceModel& device,
                                     const EnrollmentRecord& rec,
                                     std::size_t trials, double cutoff,
                                     std::span<const Temperature> temperatures,
                                     Seed seed);

}  // namespace hwbind
