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
#include <string>
#include <vector>

#include "roomqa/common.hpp"
#include "roomqa/geometry/spherical.hpp"

namespace roomqa::scene {

/// Surface order for absorption coefficients.
enum Surface { kWallX0 = 0, kWallX1, kWallY0, kWallY1, kFloor, kCeiling };

/// Axis-aligned shoebox room spanning [0, Lx] x [0, Ly] x [0, Lz].
struct RoomSpec {
  Vec3 dims{6.0, 4.0, 3.0};
  std::array<double, 6> absorption{0.3, 0.3, 0.3, 0.3, 0.3, 0.3};
  int max_order = 6;
  double speed_of_sound = 343.0;
  std::string room_id = "room";

  /// Dimensions > 0.3 m, absorptions in (0, 1], 0 <= max_order.
  void validate() const;
  double diagonal() const { return dims.norm(); }
  /// Strictly inside the walls.
  bool contains(const Vec3& p) const;
};

struct SourceSpec {
  Vec3 position = Vec3::Zero();
  std::string clip_id;
  std::vector<std::string> class_labels;
};

/// Room, receiver pose, and one or two sources.
struct SceneSpec {
  RoomSpec room;
  geometry::Pose receiver;
  std::vector<SourceSpec> sources;
  std::uint64_t seed = 0;

  /// Sources inside the room and within 10 m of the receiver; 1 or 2 of them.
  void validate() const;
};

inline constexpr double kReceiverMarginM = 0.2;
inline constexpr double kMaxSourceDistanceM = 10.0;
inline constexpr int kMaxRejectionDraws = 10000;

/// Receiver uniform in the room shrunk by 0.2 m, yaw uniform, each source
/// uniform over (room interior) ∩ ball(receiver, 10 m) by rejection.
/// Throws "room too constrained" after 10,000 rejected draws.
SceneSpec sample_scene(const RoomSpec& room, std::uint64_t seed, int n_sources);

}  // namespace roomqa::scene
