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

#include <vector>

#include "roomqa/acoustics/rir.hpp"
#include "roomqa/scene/room.hpp"

namespace roomqa::scene {

inline constexpr double kEarHalfSpanM = 0.0875;
inline constexpr double kMinPathM = 0.1;
inline constexpr double kMaxHeadShadowDb = 6.0;
inline constexpr int kMaxIsmOrder = 10;
inline constexpr int kSincTaps = 16;

/// One image-source arrival at a single listening point.
struct Arrival {
  Vec3 image = Vec3::Zero();
  double distance_m = 0.0;
  double delay_samples = 0.0;
  /// Product of wall reflection coefficients sqrt(1 - alpha).
  double reflection_gain = 1.0;
  int order = 0;
};

/// Every image of `source` up to room.max_order as heard at `point`.
std::vector<Arrival> image_arrivals(const RoomSpec& room, const Vec3& point,
                                    const Vec3& source, int sample_rate_hz);

/// Adds gain * windowed-sinc(n - delay) over 16 taps (Hann window) into `out`.
void add_fractional_impulse(Signal<double>& out, double delay_samples,
                            double gain);

struct IsmConfig {
  int sample_rate_hz = 32000;
  double ear_half_span_m = kEarHalfSpanM;
  /// Output length in samples; <= 0 sizes it to the last arrival.
  Index length = 0;
};

/// Image-source binaural RIR for two ear points offset +-ear_half_span along
/// the receiver's interaural axis. Each arrival has amplitude
/// reflection_gain / max(d, 0.1 m); the ear on the far side of the head is
/// attenuated by up to 6 dB scaled by |sin(azimuth)| of the image.
acoustics::BinauralRir ism_binaural_rir(const RoomSpec& room,
                                        const geometry::Pose& receiver,
                                        const Vec3& source,
                                        const IsmConfig& cfg = {});

/// Ear positions (left, right).
std::pair<Vec3, Vec3> ear_positions(const geometry::Pose& receiver,
                                    double ear_half_span_m = kEarHalfSpanM);

}  // namespace roomqa::scene
