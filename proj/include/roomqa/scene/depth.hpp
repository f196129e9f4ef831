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

#include <filesystem>

#include "roomqa/scene/room.hpp"

namespace roomqa::scene {

inline constexpr int kDepthViews = 18;
inline constexpr double kViewFovDeg = 20.0;

struct DepthConfig {
  int h_res = 64;  // columns per 20-degree view
  int v_res = 64;
  double v_fov_deg = 60.0;
};

/// Equiangular panorama of 18 concatenated 20-degree views. Column j looks
/// j * 20 / h_res degrees clockwise from the receiver heading (column 0 is
/// the heading); row i looks v_fov/2 - (i + 0.5) * v_fov / v_res degrees
/// above the horizon.
struct DepthPanorama {
  Eigen::MatrixXd depth;  // v_res x (18 * h_res), metres
  double fov_step_deg = kViewFovDeg;
  int n_views = kDepthViews;
  int h_res = 0;
  double v_fov_deg = 0.0;
  double yaw_rad = 0.0;

  Index width() const { return depth.cols(); }
  Index height() const { return depth.rows(); }
};

/// Distance from `origin` (inside the room) to the first wall along `dir`.
double cast_ray(const RoomSpec& room, const Vec3& origin, const Vec3& dir);

DepthPanorama panoramic_depth(const RoomSpec& room,
                              const geometry::Pose& receiver,
                              const DepthConfig& cfg = {});

/// Writes `<stem>.f32` (little-endian float32, row-major) and `<stem>.json`.
void write_depth(const std::filesystem::path& stem, const DepthPanorama& p);
DepthPanorama read_depth(const std::filesystem::path& stem);

}  // namespace roomqa::scene
