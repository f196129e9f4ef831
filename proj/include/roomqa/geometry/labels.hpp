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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "roomqa/geometry/spherical.hpp"

namespace roomqa::geometry {

enum class Vertical { kUp, kDown };

inline constexpr int kMaxDistanceBin = 20;
inline constexpr double kDistanceStepM = 0.5;

/// Clock sector, up/down, and 0.5 m distance bin.
struct DirectionLabel {
  int clock_hour = 12;  // 1..12
  Vertical vertical = Vertical::kUp;
  int distance_bin = 0;  // 0..20

  double distance_m() const { return distance_bin * kDistanceStepM; }
  bool operator==(const DirectionLabel&) const = default;
};

/// Hour h covers azimuth [30h - 15, 30h + 15), with 12 at azimuth 0.
int clock_hour_from_azimuth(double azimuth_deg);

/// Nearest 0.5 m multiple, ties to the lower bin, clamped to [0, 20].
int distance_bin_from_meters(double distance_m);

/// Up iff elevation < 90 (exactly horizontal is down).
DirectionLabel quantize_label(const SphericalDoa& doa);

/// Coarse grouping: {11,12,1} front, {2,3,4} right, {5,6,7} behind,
/// {8,9,10} left.
enum class Quadrant { kFront, kRight, kBehind, kLeft };
Quadrant quadrant(int clock_hour);

const char* vertical_name(Vertical v);
std::string hour_word(int clock_hour);

/// "seven o'clock", or "seven o' clock" with `spaced`.
std::string clock_phrase(int clock_hour, bool spaced = false);

/// "<hour-word> o'clock; <up|down>; <d.d> m".
std::string format_label(const DirectionLabel& label);

/// Fields recovered from free text; missing fields stay empty.
struct ParsedLabel {
  std::optional<int> clock_hour;
  std::optional<Vertical> vertical;
  std::optional<int> distance_bin;

  bool complete() const { return clock_hour && vertical && distance_bin; }
  std::optional<DirectionLabel> label() const;
};

/// Tolerant inverse of format_label. Accepts hour words or numerals,
/// "o'clock" / "o' clock" / none, and "m" / "meters" / no unit. Never throws.
ParsedLabel parse_label(std::string_view text);

/// Every "<hour> o'clock" mention in order, each with the up/down word that
/// immediately follows it (if any).
std::vector<ParsedLabel> find_position_mentions(std::string_view text);

}  // namespace roomqa::geometry
