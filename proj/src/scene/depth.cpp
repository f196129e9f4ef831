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

#include "roomqa/scene/depth.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <limits>

namespace roomqa::scene {

double cast_ray(const RoomSpec& room, const Vec3& origin, const Vec3& dir) {
  const double len = dir.norm();
  if (!(len > 0)) throw Error("degenerate direction");
  const Vec3 d = dir / len;
  double t = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    if (d[i] > 0) t = std::min(t, (room.dims[i] - origin[i]) / d[i]);
    else if (d[i] < 0) t = std::min(t, -origin[i] / d[i]);
  }
  return t;
}

DepthPanorama panoramic_depth(const RoomSpec& room,
                              const geometry::Pose& receiver,
                              const DepthConfig& cfg) {
  room.validate();
  if (cfg.h_res < 1 || cfg.v_res < 1 || !(cfg.v_fov_deg > 0 && cfg.v_fov_deg < 180))
    throw Error("invalid depth geometry");
  if (!room.contains(receiver.position())) throw Error("receiver outside room");

  DepthPanorama p;
  p.h_res = cfg.h_res;
  p.v_fov_deg = cfg.v_fov_deg;
  p.yaw_rad = receiver.yaw_rad();
  const Index width = static_cast<Index>(kDepthViews) * cfg.h_res;
  p.depth.resize(cfg.v_res, width);

  const Vec3 fwd = receiver.forward();
  const Vec3 right = receiver.right();
  const Vec3 up = Vec3::UnitZ();
  const double col_step = kViewFovDeg / cfg.h_res;
  const double row_step = cfg.v_fov_deg / cfg.v_res;
  for (Index j = 0; j < width; ++j) {
    const double az = deg2rad(j * col_step);
    const Vec3 horizontal = std::cos(az) * fwd + std::sin(az) * right;
    for (Index i = 0; i < cfg.v_res; ++i) {
      const double el = deg2rad(cfg.v_fov_deg / 2.0 - (i + 0.5) * row_step);
      const Vec3 dir = std::cos(el) * horizontal + std::sin(el) * up;
      p.depth(i, j) = cast_ray(room, receiver.position(), dir);
    }
  }
  return p;
}

void write_depth(const std::filesystem::path& stem, const DepthPanorama& p) {
  auto raster = stem;
  raster += ".f32";
  std::ofstream os(raster, std::ios::binary);
  if (!os) throw Error("cannot write " + raster.string());
  for (Index i = 0; i < p.depth.rows(); ++i)
    for (Index j = 0; j < p.depth.cols(); ++j) {
      const float f = static_cast<float>(p.depth(i, j));
      std::uint32_t bits;
      std::memcpy(&bits, &f, 4);
      const char b[4] = {static_cast<char>(bits & 0xff), static_cast<char>((bits >> 8) & 0xff),
                         static_cast<char>((bits >> 16) & 0xff), static_cast<char>(bits >> 24)};
      os.write(b, 4);
    }
  nlohmann::ordered_json meta;
  meta["width"] = p.width();
  meta["height"] = p.height();
  meta["fov_step_deg"] = p.fov_step_deg;
  meta["n_views"] = p.n_views;
  meta["h_res"] = p.h_res;
  meta["v_fov_deg"] = p.v_fov_deg;
  meta["yaw_rad"] = p.yaw_rad;
  meta["dtype"] = "float32";
  meta["byte_order"] = "little";
  auto sidecar = stem;
  sidecar += ".json";
  std::ofstream js(sidecar);
  if (!js) throw Error("cannot write " + sidecar.string());
  js << meta.dump(2) << "\n";
}

DepthPanorama read_depth(const std::filesystem::path& stem) {
  auto sidecar = stem;
  sidecar += ".json";
  std::ifstream js(sidecar);
  if (!js) throw Error("cannot read " + sidecar.string());
  const auto meta = nlohmann::json::parse(js);
  DepthPanorama p;
  p.fov_step_deg = meta.at("fov_step_deg").get<double>();
  p.n_views = meta.at("n_views").get<int>();
  p.h_res = meta.at("h_res").get<int>();
  p.v_fov_deg = meta.at("v_fov_deg").get<double>();
  p.yaw_rad = meta.at("yaw_rad").get<double>();
  const Index w = meta.at("width").get<Index>(), h = meta.at("height").get<Index>();

  auto raster = stem;
  raster += ".f32";
  std::ifstream is(raster, std::ios::binary);
  if (!is) throw Error("cannot read " + raster.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
  if (static_cast<Index>(bytes.size()) != 4 * w * h)
    throw Error("depth raster size does not match sidecar");
  p.depth.resize(h, w);
  for (Index k = 0; k < w * h; ++k) {
    const unsigned char* b = bytes.data() + 4 * k;
    const std::uint32_t bits = b[0] | (b[1] << 8) | (b[2] << 16) | (std::uint32_t(b[3]) << 24);
    float f;
    std::memcpy(&f, &bits, 4);
    p.depth(k / w, k % w) = f;
  }
  return p;
}

}  // namespace roomqa::scene
