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

#include "roomqa/pipeline/config.hpp"

#include <cstdio>
#include <fstream>

#include "roomqa/corpus/manifest.hpp"
#include "roomqa/rng.hpp"

namespace roomqa::pipeline {

using nlohmann::json;

namespace {

void field(bool ok, const char* name, const char* what) {
  if (!ok) throw Error(std::string(name) + ": " + what);
}

json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error("expected 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

void PipelineConfig::validate() const {
  field(n_scenes >= 1, "n_scenes", "must be >= 1");
  field(sample_rate_hz > 0, "sample_rate", "must be positive");
  field(dual_fraction >= 0.0 && dual_fraction <= 1.0, "dual_fraction",
        "must be in [0, 1]");
  field(!clip_pool.empty(), "clip_pool", "must be set");
  field(!output_dir.empty(), "output_dir", "must be set");
  field(workers >= 1, "workers", "must be >= 1");
  field(clip_seconds > 0.0, "clip_seconds", "must be positive");
  field(clip_groups >= 1, "clip_groups", "must be >= 1");
  field(train_fraction > 0.0 && train_fraction < 1.0, "train_fraction",
        "must be in (0, 1)");
  field(type3_per_dual_sample >= 0.0, "type3_per_dual_sample",
        "must be >= 0");
  field(depth.h_res >= 1 && depth.v_res >= 1, "depth", "resolution must be >= 1");
  field(depth.v_fov_deg > 0.0 && depth.v_fov_deg < 180.0, "depth.v_fov_deg",
        "must be in (0, 180)");
  if (rooms.empty()) {
    const auto& s = room_sampling;
    field(s.n_rooms >= 1, "room_sampling.n_rooms", "must be >= 1");
    field((s.dims_min.array() > 0.3).all() &&
              (s.dims_min.array() <= s.dims_max.array()).all(),
          "room_sampling.dims", "need 0.3 < dims_min <= dims_max");
    field(s.absorption_min > 0.0 && s.absorption_min <= s.absorption_max &&
              s.absorption_max <= 1.0,
          "room_sampling.absorption", "need 0 < min <= max <= 1");
    field(s.max_order >= 0, "room_sampling.max_order", "must be >= 0");
  }
  for (const auto& r : rooms) {
    try {
      r.validate();
    } catch (const Error& e) {
      throw Error("rooms[" + r.room_id + "]: " + e.what());
    }
  }
  try {
    loss_weights.validate();
  } catch (const Error& e) {
    throw Error(std::string("loss_weights: ") + e.what());
  }
}

std::vector<scene::RoomSpec> PipelineConfig::room_bank() const {
  if (!rooms.empty()) return rooms;
  std::vector<scene::RoomSpec> out;
  const auto& s = room_sampling;
  for (int i = 0; i < s.n_rooms; ++i) {
    Rng rng(Rng::derive(master_seed, static_cast<std::uint64_t>(i), 101));
    scene::RoomSpec r;
    for (int k = 0; k < 3; ++k) r.dims[k] = rng.uniform(s.dims_min[k], s.dims_max[k]);
    for (auto& a : r.absorption) a = rng.uniform(s.absorption_min, s.absorption_max);
    r.max_order = s.max_order;
    char id[32];
    std::snprintf(id, sizeof id, "room%03d", i);
    r.room_id = id;
    out.push_back(r);
  }
  return out;
}

json to_json(const PipelineConfig& c) {
  json rooms = json::array();
  for (const auto& r : c.rooms) rooms.push_back(corpus::to_json(r));
  const auto& s = c.room_sampling;
  return {
      {"master_seed", c.master_seed},
      {"sample_rate", c.sample_rate_hz},
      {"rooms", rooms},
      {"room_sampling",
       {{"n_rooms", s.n_rooms},
        {"dims_min", vec(s.dims_min)},
        {"dims_max", vec(s.dims_max)},
        {"absorption_min", s.absorption_min},
        {"absorption_max", s.absorption_max},
        {"max_order", s.max_order}}},
      {"n_scenes", c.n_scenes},
      {"dual_fraction", c.dual_fraction},
      {"clip_pool", c.clip_pool},
      {"templates", c.templates},
      {"loss_weights",
       {{"alpha", c.loss_weights.alpha},
        {"eta", c.loss_weights.eta},
        {"lambda_edc", c.loss_weights.lambda_edc}}},
      {"output_dir", c.output_dir},
      {"workers", c.workers},
      {"clip_seconds", c.clip_seconds},
      {"target_rms_dbfs", c.target_rms_dbfs},
      {"depth",
       {{"h_res", c.depth.h_res},
        {"v_res", c.depth.v_res},
        {"v_fov_deg", c.depth.v_fov_deg}}},
      {"clip_groups", c.clip_groups},
      {"train_fraction", c.train_fraction},
      {"type3_per_dual_sample", c.type3_per_dual_sample},
  };
}

PipelineConfig config_from_json(const json& j) {
  PipelineConfig c;
  if (!j.is_object()) throw Error("config: expected a JSON object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "master_seed") c.master_seed = v.get<std::uint64_t>();
      else if (key == "sample_rate") c.sample_rate_hz = v.get<int>();
      else if (key == "rooms") {
        c.rooms.clear();
        for (const auto& r : v) c.rooms.push_back(corpus::room_from_json(r));
      } else if (key == "room_sampling") {
        auto& s = c.room_sampling;
        if (v.contains("n_rooms")) s.n_rooms = v.at("n_rooms").get<int>();
        if (v.contains("dims_min")) s.dims_min = vec_from(v.at("dims_min"));
        if (v.contains("dims_max")) s.dims_max = vec_from(v.at("dims_max"));
        if (v.contains("absorption_min"))
          s.absorption_min = v.at("absorption_min").get<double>();
        if (v.contains("absorption_max"))
          s.absorption_max = v.at("absorption_max").get<double>();
        if (v.contains("max_order")) s.max_order = v.at("max_order").get<int>();
      } else if (key == "n_scenes") c.n_scenes = v.get<int>();
      else if (key == "dual_fraction") c.dual_fraction = v.get<double>();
      else if (key == "clip_pool") c.clip_pool = v.get<std::string>();
      else if (key == "templates") c.templates = v.get<std::string>();
      else if (key == "loss_weights") {
        auto& w = c.loss_weights;
        if (v.contains("alpha")) w.alpha = v.at("alpha").get<std::array<double, 3>>();
        if (v.contains("eta")) w.eta = v.at("eta").get<std::array<double, 2>>();
        if (v.contains("lambda_edc")) w.lambda_edc = v.at("lambda_edc").get<double>();
      } else if (key == "output_dir") c.output_dir = v.get<std::string>();
      else if (key == "workers") c.workers = v.get<int>();
      else if (key == "clip_seconds") c.clip_seconds = v.get<double>();
      else if (key == "target_rms_dbfs") c.target_rms_dbfs = v.get<double>();
      else if (key == "depth") {
        if (v.contains("h_res")) c.depth.h_res = v.at("h_res").get<int>();
        if (v.contains("v_res")) c.depth.v_res = v.at("v_res").get<int>();
        if (v.contains("v_fov_deg")) c.depth.v_fov_deg = v.at("v_fov_deg").get<double>();
      } else if (key == "clip_groups") c.clip_groups = v.get<int>();
      else if (key == "train_fraction") c.train_fraction = v.get<double>();
      else if (key == "type3_per_dual_sample")
        c.type3_per_dual_sample = v.get<double>();
      else throw Error("unknown field");
    } catch (const json::exception& e) {
      throw Error(key + ": " + e.what());
    } catch (const Error& e) {
      throw Error(key + ": " + e.what());
    }
  }
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void save_config(const std::filesystem::path& path, const PipelineConfig& c) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(c).dump(2) << '\n';
}

}  // namespace roomqa::pipeline
