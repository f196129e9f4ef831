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

#pragma once

#include <array>
#include <optional>
#include <string>

#include "roomqa/acoustics/edc.hpp"
#include "roomqa/acoustics/rir.hpp"

namespace roomqa::acoustics {

inline constexpr double kDirectWindowS = 0.0025;
inline constexpr double kDrrSentinelDb = 120.0;

struct ChannelDescriptors {
  double rt60_s = 0.0;
  double edt_s = 0.0;
  double drr_db = 0.0;
};

struct AcousticDescriptors {
  ChannelDescriptors left;
  ChannelDescriptors right;
};

/// Slope (dB/s) of the least-squares line through the normalized EDC samples
/// whose level lies in [lo_db, hi_db]. Throws "insufficient decay range" when
/// the curve never reaches lo_db or fewer than two samples fall in range.
double edc_decay_slope(const EnergyDecayCurve& edc, double hi_db, double lo_db);

/// RT60 extrapolated from the T20 fit over [-5, -25] dB.
double estimate_rt60(const Signal<double>& r, int sample_rate_hz);

/// Early decay time: 6x the time to -10 dB from the [0, -10] dB fit.
double estimate_edt(const Signal<double>& r, int sample_rate_hz);

/// Energy within +-2.5 ms of argmax|r| over the energy everywhere else, in
/// dB. Returns +120 when there is no energy outside the direct window.
double direct_to_reverberant_db(const Signal<double>& r, int sample_rate_hz);

ChannelDescriptors channel_descriptors(const Signal<double>& r,
                                       int sample_rate_hz);

/// Throws "insufficient decay range" if RT60 is undefined on either channel.
AcousticDescriptors acoustic_descriptors(const BinauralRir& rir);

/// Non-throwing variant for reporting; fits that fail are left empty.
struct PartialDescriptors {
  std::optional<double> rt60_s;
  std::optional<double> edt_s;
  double drr_db = 0.0;
  std::string diagnostic;
};

std::array<PartialDescriptors, 2> try_acoustic_descriptors(
    const BinauralRir& rir);

}  // namespace roomqa::acoustics
