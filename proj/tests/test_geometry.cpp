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

#include <catch_amalgamated.hpp>

#include <cmath>

#include <Eigen/Geometry>

#include "roomqa/geometry/labels.hpp"
#include "roomqa/geometry/spherical.hpp"
#include "support.hpp"

using namespace roomqa;
using namespace roomqa::geometry;
using Catch::Matchers::WithinAbs;

namespace {

// Azimuth by rotating the world into the receiver frame (x forward, y left).
double rotation_oracle_azimuth(const Vec3& pos, double yaw, const Vec3& src) {
  const Eigen::Matrix3d world_to_rx =
      Eigen::AngleAxisd(-yaw, Vec3::UnitZ()).toRotationMatrix();
  const Vec3 v = world_to_rx * (src - pos);
  double az = rad2deg(std::atan2(-v.y(), v.x()));
  if (az < 0) az += 360.0;
  return az;
}

Vec3 unit_from(double az_deg, double el_deg) {
  const double a = deg2rad(az_deg), e = deg2rad(el_deg);
  return {std::sin(e) * std::cos(a), std::sin(e) * std::sin(a), std::cos(e)};
}

SphericalDoa random_doa(Rng& rng) {
  // uniform on the sphere
  const double z = rng.uniform(-1.0, 1.0);
  return {rng.uniform(0.0, 360.0), rad2deg(std::acos(z)), rng.uniform(0.1, 10.0)};
}

}  // namespace

TEST_CASE("relative_spherical axis and pole cases") {
  const Pose rx(Vec3(1, 2, 1.5), 0.0);
  const auto ahead = relative_spherical(rx, Vec3(3, 2, 1.5));
  CHECK_THAT(ahead.azimuth_deg, WithinAbs(0.0, 1e-9));
  CHECK_THAT(ahead.elevation_deg, WithinAbs(90.0, 1e-9));
  CHECK_THAT(ahead.distance_m, WithinAbs(2.0, 1e-12));

  const auto up = relative_spherical(rx, Vec3(1, 2, 2.5));
  CHECK(up.azimuth_deg == 0.0);
  CHECK_THAT(up.elevation_deg, WithinAbs(0.0, 1e-9));
  CHECK_THAT(up.distance_m, WithinAbs(1.0, 1e-12));

  CHECK_THROWS_WITH(relative_spherical(rx, Vec3(1, 2, 1.5)), "degenerate direction");
}

TEST_CASE("relative_spherical yaw 90 matches the rotation oracle") {
  const Pose rx(Vec3::Zero(), kPi / 2);
  const auto d = relative_spherical(rx, Vec3(1, 0, 0));
  CHECK_THAT(d.azimuth_deg, WithinAbs(rotation_oracle_azimuth(Vec3::Zero(), kPi / 2, Vec3(1, 0, 0)), 1e-9));
  CHECK_THAT(d.azimuth_deg, WithinAbs(90.0, 1e-9));
  CHECK((rx.right() - Vec3(1, 0, 0)).norm() < 1e-12);

  Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    const Vec3 pos(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(0, 3));
    const double yaw = rng.uniform(-10, 10);
    const Vec3 src(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(0, 3));
    const auto doa = relative_spherical(Pose(pos, yaw), src);
    const double ref = rotation_oracle_azimuth(pos, yaw, src);
    const double diff = std::fmod(std::abs(doa.azimuth_deg - ref), 360.0);
    CHECK(std::min(diff, 360.0 - diff) < 1e-7);
    CHECK_THAT(doa.elevation_deg,
               WithinAbs(rad2deg(std::acos((src - pos).z() / (src - pos).norm())), 1e-9));
    CHECK(doa.azimuth_deg >= 0.0);
    CHECK(doa.azimuth_deg < 360.0);
  }
}

TEST_CASE("Pose normalizes yaw") {
  CHECK_THAT(Pose(Vec3::Zero(), -kPi / 2).yaw_rad(), WithinAbs(1.5 * kPi, 1e-12));
  CHECK_THAT(Pose(Vec3::Zero(), 5 * kPi).yaw_rad(), WithinAbs(kPi, 1e-12));
  CHECK(normalize_yaw(2 * kPi) == 0.0);
}

TEST_CASE("quantize_label examples") {
  CHECK(quantize_label({0, 85, 2.5}) == DirectionLabel{12, Vertical::kUp, 5});
  CHECK(quantize_label({105, 92, 0.5}) == DirectionLabel{4, Vertical::kDown, 1});
  CHECK(quantize_label({345, 90, 0.74}) == DirectionLabel{12, Vertical::kDown, 1});
  CHECK(distance_bin_from_meters(0.75) == 1);
  CHECK(distance_bin_from_meters(0.7501) == 2);
  CHECK(distance_bin_from_meters(10.2) == 20);
  CHECK(distance_bin_from_meters(0.0) == 0);
  CHECK(clock_hour_from_azimuth(14.999) == 12);
  CHECK(clock_hour_from_azimuth(15.0) == 1);
  CHECK(clock_hour_from_azimuth(344.999) == 11);
}

TEST_CASE("quantize_label hour is stable away from sector boundaries") {
  Rng rng(32);
  for (int i = 0; i < 2000; ++i) {
    const double az = rng.uniform(0.0, 360.0);
    const int h = clock_hour_from_azimuth(az);
    const double offset = std::fmod(az + 15.0, 30.0);  // distance into the sector
    const double margin = std::min(offset, 30.0 - offset);
    const double delta = rng.uniform(-1.0, 1.0) * margin * 0.999;
    double p = az + delta;
    if (p < 0) p += 360.0;
    if (p >= 360.0) p -= 360.0;
    CHECK(clock_hour_from_azimuth(p) == h);
  }
}

TEST_CASE("doa_bins examples and agreement with clock hours") {
  const auto a = doa_bins({0.0, 0.0, 1.0});
  CHECK((a.azimuth == 0 && a.elevation == 0));
  const auto b = doa_bins({359.9, 179.9, 1.0});
  CHECK((b.azimuth == 359 && b.elevation == 179));
  const auto c = doa_bins({92.4, 92.7, 1.0});
  CHECK((c.azimuth == 92 && c.elevation == 92));
  CHECK(doa_bins({10, 180.0, 1}).elevation == 179);
  for (int az = 0; az < 360; ++az) {
    const SphericalDoa d{static_cast<double>(az), 90.0, 1.0};
    CHECK(clock_hour_from_azimuth(doa_bins(d).azimuth) == quantize_label(d).clock_hour);
  }
}

TEST_CASE("quadrants") {
  for (int h : {11, 12, 1}) CHECK(quadrant(h) == Quadrant::kFront);
  for (int h : {2, 3, 4}) CHECK(quadrant(h) == Quadrant::kRight);
  for (int h : {5, 6, 7}) CHECK(quadrant(h) == Quadrant::kBehind);
  for (int h : {8, 9, 10}) CHECK(quadrant(h) == Quadrant::kLeft);
}

TEST_CASE("format_label examples") {
  CHECK(format_label({7, Vertical::kDown, 1}) == "seven o'clock; down; 0.5 m");
  CHECK(format_label({12, Vertical::kUp, 0}) == "twelve o'clock; up; 0.0 m");
  CHECK(format_label({3, Vertical::kUp, 5}) == "three o'clock; up; 2.5 m");
  CHECK(clock_phrase(8, true) == "eight o' clock");
}

TEST_CASE("parse_label examples") {
  const auto a = parse_label("seven o'clock; down; 0.5");
  REQUIRE(a.complete());
  CHECK(*a.label() == DirectionLabel{7, Vertical::kDown, 1});
  const auto b = parse_label("Twelve o' clock, up, 10 meters");
  REQUIRE(b.complete());
  CHECK(*b.label() == DirectionLabel{12, Vertical::kUp, 20});
  const auto c = parse_label("somewhere left");
  CHECK_FALSE(c.clock_hour);
  CHECK_FALSE(c.vertical);
  CHECK_FALSE(c.distance_bin);
  CHECK_FALSE(c.label());
  const auto d = parse_label("3 o'clock; up; 2.5 m");
  CHECK(*d.label() == DirectionLabel{3, Vertical::kUp, 5});
  const auto e = parse_label("eleven o'clock");
  CHECK(e.clock_hour == 11);
  CHECK_FALSE(e.complete());
}

TEST_CASE("parse_label inverts format_label on every label") {
  int n = 0;
  for (int h = 1; h <= 12; ++h)
    for (auto v : {Vertical::kUp, Vertical::kDown})
      for (int bin = 0; bin <= kMaxDistanceBin; ++bin) {
        const DirectionLabel l{h, v, bin};
        const auto p = parse_label(format_label(l));
        REQUIRE(p.label());
        CHECK(*p.label() == l);
        ++n;
      }
  CHECK(n == 504);
}

TEST_CASE("parse_label survives arbitrary text") {
  Rng rng(33);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789 ;,.'o:-";
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const auto len = rng.below(60);
    for (std::uint64_t k = 0; k < len; ++k) s += alphabet[rng.below(alphabet.size())];
    CHECK_NOTHROW(parse_label(s));
    CHECK_NOTHROW(find_position_mentions(s));
  }
}

TEST_CASE("find_position_mentions keeps order and verticals") {
  const auto m = find_position_mentions(
      "The dog is at eight o' clock, up. The siren is at 2 o'clock. Thus both lie left.");
  REQUIRE(m.size() == 2);
  CHECK(m[0].clock_hour == 8);
  CHECK(m[0].vertical == Vertical::kUp);
  CHECK(m[1].clock_hour == 2);
  CHECK_FALSE(m[1].vertical);
}

TEST_CASE("angular_error examples") {
  const SphericalDoa a{40, 70, 1};
  CHECK_THAT(angular_error(a, a), WithinAbs(0.0, 1e-6));
  CHECK_THAT(angular_error({30, 90, 1}, {120, 90, 1}), WithinAbs(90.0, 1e-9));
  CHECK_THAT(angular_error({30, 90, 1}, {210, 90, 1}), WithinAbs(180.0, 1e-9));
  CHECK_THAT(angular_error({0, 0, 1}, {123, 180, 1}), WithinAbs(180.0, 1e-9));
}

TEST_CASE("angular_error properties") {
  Rng rng(34);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_doa(rng), b = random_doa(rng);
    const double e = angular_error(a, b);
    CHECK(e >= 0.0);
    CHECK(e <= 180.0);
    CHECK_THAT(angular_error(b, a), WithinAbs(e, 1e-12));
    const double dot = unit_from(a.azimuth_deg, a.elevation_deg).dot(unit_from(b.azimuth_deg, b.elevation_deg));
    CHECK_THAT(e, WithinAbs(rad2deg(std::acos(std::clamp(dot, -1.0, 1.0))), 1e-7));
    // law of cosines with latitude 90 - elevation
    const double pa = deg2rad(90 - a.elevation_deg), pb = deg2rad(90 - b.elevation_deg);
    const double cosine = std::sin(pa) * std::sin(pb) +
                          std::cos(pa) * std::cos(pb) * std::cos(deg2rad(a.azimuth_deg - b.azimuth_deg));
    CHECK_THAT(e, WithinAbs(rad2deg(std::acos(std::clamp(cosine, -1.0, 1.0))), 1e-6));
    const double off = rng.uniform(0.0, 360.0);
    auto ra = a, rb = b;
    ra.azimuth_deg = std::fmod(a.azimuth_deg + off, 360.0);
    rb.azimuth_deg = std::fmod(b.azimuth_deg + off, 360.0);
    CHECK_THAT(angular_error(ra, rb), WithinAbs(e, 1e-6));
    auto c = a;
    c.distance_m = 7.0;
    CHECK_THAT(angular_error(a, c), WithinAbs(0.0, 1e-5));
  }
}
