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

#include "roomqa/scene/ism.hpp"

#include <cmath>

namespace roomqa::scene {

std::vector<Arrival> image_arrivals(const RoomSpec& room, const Vec3& point,
                                    const Vec3& source, int sample_rate_hz) {
  room.validate();
  if (room.max_order > kMaxIsmOrder) throw Error("max_order above 10");
  if (!room.contains(source)) throw Error("source outside room");

  std::array<double, 6> beta;
  for (int i = 0; i < 6; ++i) beta[i] = std::sqrt(1.0 - room.absorption[i]);

  const int order = room.max_order;
  const int span = (order + 1) / 2 + 1;
  std::vector<Arrival> out;
  for (int u = 0; u <= 1; ++u)
    for (int v = 0; v <= 1; ++v)
      for (int w = 0; w <= 1; ++w)
        for (int l = -span; l <= span; ++l) {
          const int ox = std::abs(2 * l - u);
          if (ox > order) continue;
          for (int m = -span; m <= span; ++m) {
            const int oy = std::abs(2 * m - v);
            if (ox + oy > order) continue;
            for (int n = -span; n <= span; ++n) {
              const int oz = std::abs(2 * n - w);
              if (ox + oy + oz > order) continue;
              Arrival a;
              a.image = {(1 - 2 * u) * source.x() + 2 * l * room.dims.x(),
                         (1 - 2 * v) * source.y() + 2 * m * room.dims.y(),
                         (1 - 2 * w) * source.z() + 2 * n * room.dims.z()};
              a.order = ox + oy + oz;
              a.reflection_gain =
                  std::pow(beta[kWallX0], std::abs(l - u)) * std::pow(beta[kWallX1], std::abs(l)) *
                  std::pow(beta[kWallY0], std::abs(m - v)) * std::pow(beta[kWallY1], std::abs(m)) *
                  std::pow(beta[kFloor], std::abs(n - w)) * std::pow(beta[kCeiling], std::abs(n));
              a.distance_m = (a.image - point).norm();
              a.delay_samples = a.distance_m / room.speed_of_sound * sample_rate_hz;
              out.push_back(a);
            }
          }
        }
  return out;
}

void add_fractional_impulse(Signal<double>& out, double delay_samples,
                            double gain) {
  constexpr int half = kSincTaps / 2;
  const Index base = static_cast<Index>(std::floor(delay_samples));
  for (Index n = base - (half - 1); n <= base + half; ++n) {
    if (n < 0 || n >= out.size()) continue;
    const double x = static_cast<double>(n) - delay_samples;
    if (std::abs(x) >= half) continue;
    const double sinc = x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
    const double window = 0.5 * (1.0 + std::cos(kPi * x / half));
    out[n] += gain * sinc * window;
  }
}

std::pair<Vec3, Vec3> ear_positions(const geometry::Pose& receiver,
                                    double ear_half_span_m) {
  return {receiver.position() + ear_half_span_m * receiver.left(),
          receiver.position() + ear_half_span_m * receiver.right()};
}

acoustics::BinauralRir ism_binaural_rir(const RoomSpec& room,
                                        const geometry::Pose& receiver,
                                        const Vec3& source,
                                        const IsmConfig& cfg) {
  if (cfg.sample_rate_hz <= 0) throw Error("sample rate must be positive");
  const auto [left_ear, right_ear] = ear_positions(receiver, cfg.ear_half_span_m);
  const std::array<std::vector<Arrival>, 2> arrivals = {
      image_arrivals(room, left_ear, source, cfg.sample_rate_hz),
      image_arrivals(room, right_ear, source, cfg.sample_rate_hz)};

  Index length = cfg.length;
  if (length <= 0) {
    double last = 0.0;
    for (const auto& ear : arrivals)
      for (const auto& a : ear) last = std::max(last, a.delay_samples);
    length = static_cast<Index>(std::ceil(last)) + kSincTaps / 2 + 1;
  }

  std::array<Signal<double>, 2> taps = {Signal<double>::Zero(length),
                                        Signal<double>::Zero(length)};
  for (int ear = 0; ear < 2; ++ear) {
    for (const auto& a : arrivals[ear]) {
      // Head shadow follows the image's direction as seen from the head
      // centre: positive lateral = right hemisphere.
      const Vec3 v = a.image - receiver.position();
      const double norm = v.norm();
      double shadow = 1.0;
      if (norm > 0.0) {
        const Vec3 h(v.dot(receiver.forward()), v.dot(receiver.right()), 0.0);
        const double hn = h.norm();
        const double lateral = hn > 0.0 ? h.y() / hn : 0.0;
        const bool far_side = (ear == 0 && lateral > 0) || (ear == 1 && lateral < 0);
        if (far_side)
          shadow = std::pow(10.0, -kMaxHeadShadowDb * std::abs(lateral) / 20.0);
      }
      const double gain = a.reflection_gain * shadow / std::max(a.distance_m, kMinPathM);
      add_fractional_impulse(taps[ear], a.delay_samples, gain);
    }
  }
  return acoustics::BinauralRir::from_channels(taps[0], taps[1], cfg.sample_rate_hz);
}

}  // namespace roomqa::scene
