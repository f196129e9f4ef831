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

#include "roomqa/geometry/spherical.hpp"

#include <cmath>

namespace roomqa::geometry {

double normalize_yaw(double yaw_rad) {
  double y = std::fmod(yaw_rad, 2.0 * kPi);
  if (y < 0) y += 2.0 * kPi;
  if (y >= 2.0 * kPi) y = 0.0;
  return y;
}

Pose::Pose(const Vec3& position, double yaw_rad)
    : position_(position), yaw_rad_(normalize_yaw(yaw_rad)) {}

Vec3 Pose::forward() const {
  return {std::cos(yaw_rad_), std::sin(yaw_rad_), 0.0};
}

Vec3 Pose::right() const {
  return {std::sin(yaw_rad_), -std::cos(yaw_rad_), 0.0};
}

Vec3 SphericalDoa::unit_vector() const {
  const double az = deg2rad(azimuth_deg);
  const double el = deg2rad(elevation_deg);
  return {std::sin(el) * std::cos(az), std::sin(el) * std::sin(az),
          std::cos(el)};
}

SphericalDoa relative_spherical(const Pose& receiver, const Vec3& source) {
  const Vec3 v = source - receiver.position();
  const double d = v.norm();
  if (!(d > 1e-9)) throw Error("degenerate direction");

  SphericalDoa out;
  out.distance_m = d;
  out.elevation_deg = rad2deg(std::acos(std::clamp(v.z() / d, -1.0, 1.0)));
  const double fwd = v.dot(receiver.forward());
  const double rgt = v.dot(receiver.right());
  if (std::hypot(fwd, rgt) <= 1e-12 * d) {
    out.azimuth_deg = 0.0;
  } else {
    double az = rad2deg(std::atan2(rgt, fwd));
    if (az < 0) az += 360.0;
    if (az >= 360.0) az = 0.0;
    out.azimuth_deg = az;
  }
  return out;
}

double angular_error(const SphericalDoa& a, const SphericalDoa& b) {
  const Vec3 u = a.unit_vector();
  const Vec3 v = b.unit_vector();
  return rad2deg(std::atan2(u.cross(v).norm(), u.dot(v)));
}

DoaBins doa_bins(const SphericalDoa& doa) {
  int az = static_cast<int>(std::floor(doa.azimuth_deg)) % 360;
  if (az < 0) az += 360;
  const int el = std::clamp(static_cast<int>(std::floor(doa.elevation_deg)), 0, 179);
  return {az, el};
}

}  // namespace roomqa::geometry
