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

#include "roomqa/common.hpp"

namespace roomqa::geometry {

/// Receiver position (m) and heading. The heading is measured
/// counterclockwise from +x in the horizontal plane (z up) and kept in
/// [0, 2*pi).
class Pose {
 public:
  Pose() = default;
  Pose(const Vec3& position, double yaw_rad);

  const Vec3& position() const { return position_; }
  double yaw_rad() const { return yaw_rad_; }

  Vec3 forward() const;
  /// Listener's right, i.e. azimuth 90 (three o'clock).
  Vec3 right() const;
  Vec3 left() const { return -right(); }

 private:
  Vec3 position_ = Vec3::Zero();
  double yaw_rad_ = 0.0;
};

double normalize_yaw(double yaw_rad);

/// Direction of arrival relative to a receiver.
///   azimuth_deg   in [0, 360), clockwise from the facing direction seen from
///                 above, so 90 is the listener's right;
///   elevation_deg in [0, 180], polar angle from zenith (90 = horizontal).
struct SphericalDoa {
  double azimuth_deg = 0.0;
  double elevation_deg = 90.0;
  double distance_m = 0.0;

  /// Unit vector in the receiver frame (x forward, y right, z up).
  Vec3 unit_vector() const;
};

/// Throws "degenerate direction" when the points coincide (< 1e-9 m).
/// Azimuth at the poles is 0.
SphericalDoa relative_spherical(const Pose& receiver, const Vec3& source);

/// Great-circle angle between two directions, degrees in [0, 180].
/// Distances are ignored.
double angular_error(const SphericalDoa& a, const SphericalDoa& b);

struct DoaBins {
  int azimuth = 0;    // 0..359
  int elevation = 0;  // 0..179
};

DoaBins doa_bins(const SphericalDoa& doa);

}  // namespace roomqa::geometry
