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

#include "hwbind/enroll.hpp"

#include <algorithm>
#include <cmath>

#include "hwbind/error.hpp"

namespace hwbind {

StableWindow find_stable_window(std::span<const StartupSample> samples,
                                std::size_t sz, double threshold) {
  if (samples.size() < 2) throw ParameterError("need at least two startup samples");
  if (!(threshold > 0.5 && threshold <= 1.0)) {
    throw ParameterError("stability threshold must lie in (0.5, 1]");
  }
  const std::size_t len = samples.front().bits.size();
  for (const auto& s : samples) {
    if (s.bits.size() != len) throw ParameterError("startup samples differ in length");
  }
  if (sz == 0 || sz > len) throw ParameterError("window size must lie in [1, sample length]");

  std::vector<std::size_t> ones(len, 0);
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < len; ++i) ones[i] += s.bits[i] ? 1 : 0;
  }

  // Integer form of "count / n >= threshold", tolerant to rounding of the
  // threshold literal (0.999 * 1000 is not exactly 999 in binary).
  const std::size_t n = samples.size();
  const auto required = static_cast<std::size_t>(
      std::ceil(threshold * static_cast<double>(n) - 1e-9));

  std::vector<std::uint8_t> stable(len), majority(len);
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t zeros = n - ones[i];
    majority[i] = ones[i] > zeros ? 1 : 0;
    stable[i] = std::max(ones[i], zeros) >= required ? 1 : 0;
  }

  std::size_t count = 0;
  for (std::size_t i = 0; i < sz; ++i) count += stable[i];
  std::size_t best = count, best_offset = 0;
  for (std::size_t off = 1; off + sz <= len; ++off) {
    count += stable[off + sz - 1];
    count -= stable[off - 1];
    if (count > best) {
      best = count;
      best_offset = off;
    }
  }
  if (best == 0) throw EnrollmentError("no window contains a stable bit");

  StableWindow w{best_offset, BitString(sz), BitString(sz)};
  for (std::size_t i = 0; i < sz; ++i) {
    const bool s = stable[best_offset + i] != 0;
    w.sm.set(i, s);
    w.b.set(i, s && majority[best_offset + i] != 0);
  }
  return w;
}

EnrollmentRecord enroll(const DeviceModel& device, const SamplingPlan& plan,
                        std::size_t sz, std::size_t hd, std::size_t key_len,
                        Seed seed, const EnrollOptions& options) {
  if (plan.startups_per_temperature < 1 || plan.temperatures.empty()) {
    throw ParameterError("sampling plan needs at least one startup and temperature");
  }
  if (key_len < 17) {
    throw ParameterError("key_len must be at least 17 bytes (16 cipher key + 1 assignment)");
  }
  try {
    check_mask_capacity(sz, hd, options.mask_cap);
  } catch (const CapacityError& e) {
    throw EnrollmentError(e.what());
  }

  std::vector<StartupSample> samples;
  samples.reserve(plan.total());
  std::uint64_t index = 0;
  for (auto t : plan.temperatures) {
    for (std::size_t i = 0; i < plan.startups_per_temperature; ++i) {
      samples.push_back(startup(device, t, derive_seed(seed, "enroll.sample", index++)));
    }
  }

  StableWindow w = find_stable_window(samples, sz, options.threshold);

  Rng key_rng(derive_seed(seed, "enroll.key"));
  Rng locker_rng(derive_seed(seed, "enroll.lockers"));

  EnrollmentRecord rec;
  rec.offset = w.offset;
  rec.sz = sz;
  rec.sm = w.sm;
  rec.b = w.b;
  rec.key = key_rng.bytes(key_len);
  rec.helper.offset = w.offset;
  rec.helper.sz = sz;
  rec.helper.hd = hd;
  rec.helper.key_len = key_len;
  rec.helper.sm = w.sm;
  rec.helper.lockers = lock(rec.key, w.b & w.sm, hd, locker_rng, options.mask_cap);
  return rec;
}

BitString puf_window(const HelperData& helper, const BitString& startup_bits) {
  if (startup_bits.size() < helper.offset + helper.sz) {
    throw ParameterError("startup reading does not cover the PUF window");
  }
  return startup_bits.slice(helper.offset, helper.sz);
}

VerificationReport verify_enrollment(const DeviceModel& device,
                                     const EnrollmentRecord& rec,
                                     std::size_t trials, double cutoff,
                                     std::span<const Temperature> temperatures,
                                     Seed seed) {
  if (trials < 1) throw ParameterError("verification needs at least one trial");
  if (temperatures.empty()) throw ParameterError("no verification temperatures");
  VerificationReport report;
  report.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto t = temperatures[i % temperatures.size()];
    const auto sample = startup(device, t, derive_seed(seed, "verify.sample", i));
    const auto key = unlock(rec.helper, puf_window(rec.helper, sample.bits));
    if (!key || *key != rec.key) ++report.failures;
  }
  report.failure_rate = static_cast<double>(report.failures) / static_cast<double>(trials);
  report.pass = report.failure_rate <= cutoff;
  return report;
}

}  // namespace hwbind
