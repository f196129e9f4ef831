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

#include "roomqa/scene/room.hpp"

#include "roomqa/rng.hpp"

namespace roomqa::scene {

void RoomSpec::validate() const {
  for (int i = 0; i < 3; ++i)
    if (!(dims[i] > 0.3)) throw Error("room dimensions must exceed 0.3 m");
  for (double a : absorption)
    if (!(a > 0.0 && a <= 1.0)) throw Error("absorption must lie in (0, 1]");
  if (max_order < 0) throw Error("max_order must be nonnegative");
  if (!(speed_of_sound > 0)) throw Error("speed of sound must be positive");
}

bool RoomSpec::contains(const Vec3& p) const {
  for (int i = 0; i < 3; ++i)
    if (!(p[i] > 0.0 && p[i] < dims[i])) return false;
  return true;
}

void SceneSpec::validate() const {
  room.validate();
  if (sources.empty() || sources.size() > 2)
    throw Error("a scene holds one or two sources");
  if (!room.contains(receiver.position())) throw Error("receiver outside room");
  for (const auto& s : sources) {
    if (!room.contains(s.position)) throw Error("source outside room");
    const double d = (s.position - receiver.position()).norm();
    if (d > kMaxSourceDistanceM) throw Error("source farther than 10 m");
    if (!(d > 1e-9)) throw Error("degenerate direction");
  }
}

SceneSpec sample_scene(const RoomSpec& room, std::uint64_t seed, int n_sources) {
  room.validate();
  if (n_sources < 1 || n_sources > 2)
    throw Error("a scene holds one or two sources");
  for (int i = 0; i < 3; ++i)
    if (!(room.dims[i] > 2.0 * kReceiverMarginM))
      throw Error("room too constrained");

  Rng rng(seed);
  SceneSpec scene;
  scene.room = room;
  scene.seed = seed;
  Vec3 rx;
  for (int i = 0; i < 3; ++i)
    rx[i] = rng.uniform(kReceiverMarginM, room.dims[i] - kReceiverMarginM);
  scene.receiver = geometry::Pose(rx, rng.uniform(0.0, 2.0 * kPi));

  for (int s = 0; s < n_sources; ++s) {
    int draws = 0;
    for (;;) {
      if (++draws > kMaxRejectionDraws) throw Error("room too constrained");
      Vec3 p;
      for (int i = 0; i < 3; ++i) p[i] = rng.uniform(0.0, room.dims[i]);
      const double d = (p - rx).norm();
      if (room.contains(p) && d <= kMaxSourceDistanceM && d > 1e-9) {
        scene.sources.push_back({p, {}, {}});
        break;
      }
    }
  }
  return scene;
}

}  // namespace roomqa::scene
