/*
Copyright 2026 The roomqa Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "roomqa/acoustics/descriptors.hpp"

#include <cmath>

namespace roomqa::acoustics {

double edc_decay_slope(const EnergyDecayCurve& edc, double hi_db,
                       double lo_db) {
  const Signal<double> db = edc.normalized_db();
  if (db.size() == 0 || !(db.minCoeff() <= lo_db))
    throw Error("insufficient decay range");

  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (Index t = 0; t < db.size(); ++t) {
    if (db[t] > hi_db || db[t] < lo_db) continue;
    const double x = static_cast<double>(t) / edc.sample_rate_hz;
    n += 1;
    sx += x;
    sy += db[t];
    sxx += x * x;
    sxy += x * db[t];
  }
  const double denom = n * sxx - sx * sx;
  if (n < 2 || denom <= 0) throw Error("insufficient decay range");
  const double slope = (n * sxy - sx * sy) / denom;
  if (!(slope < 0)) throw Error("insufficient decay range");
  return slope;
}

double estimate_rt60(const Signal<double>& r, int sample_rate_hz) {
  const double slope = edc_decay_slope(schroeder_edc(r, sample_rate_hz), -5.0, -25.0);
  const double t20 = -20.0 / slope;
  return 3.0 * t20;
}

double estimate_edt(const Signal<double>& r, int sample_rate_hz) {
  const double slope = edc_decay_slope(schroeder_edc(r, sample_rate_hz), 0.0, -10.0);
  return 6.0 * (-10.0 / slope);
}

double direct_to_reverberant_db(const Signal<double>& r, int sample_rate_hz) {
  if (r.size() == 0) throw Error("empty channel");
  Index peak = 0;
  r.abs().maxCoeff(&peak);
  const Index half = static_cast<Index>(std::lround(kDirectWindowS * sample_rate_hz));
  const Index lo = std::max<Index>(0, peak - half);
  const Index hi = std::min<Index>(r.size() - 1, peak + half);
  const double direct = r.segment(lo, hi - lo + 1).square().sum();
  const double late = r.square().sum() - direct;
  if (late <= 0.0) return kDrrSentinelDb;
  const double db = 10.0 * std::log10(direct / late);
  return std::clamp(db, -kDrrSentinelDb, kDrrSentinelDb);
}

ChannelDescriptors channel_descriptors(const Signal<double>& r,
                                       int sample_rate_hz) {
  return {estimate_rt60(r, sample_rate_hz), estimate_edt(r, sample_rate_hz),
          direct_to_reverberant_db(r, sample_rate_hz)};
}

AcousticDescriptors acoustic_descriptors(const BinauralRir& rir) {
  rir.validate();
  return {channel_descriptors(rir.left(), rir.sample_rate_hz),
          channel_descriptors(rir.right(), rir.sample_rate_hz)};
}

std::array<PartialDescriptors, 2> try_acoustic_descriptors(
    const BinauralRir& rir) {
  rir.validate();
  std::array<PartialDescriptors, 2> out;
  for (Index c = 0; c < 2; ++c) {
    const Signal<double> r = rir.channel(c);
    auto& d = out[c];
    d.drr_db = direct_to_reverberant_db(r, rir.sample_rate_hz);
    try {
      d.rt60_s = estimate_rt60(r, rir.sample_rate_hz);
    } catch (const Error& e) {
      d.diagnostic = e.what();
    }
    try {
      d.edt_s = estimate_edt(r, rir.sample_rate_hz);
    } catch (const Error& e) {
      d.diagnostic = e.what();
    }
  }
  return out;
}

}  // namespace roomqa::acoustics
