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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "roomqa/acoustics/losses.hpp"
#include "roomqa/scene/depth.hpp"
#include "roomqa/scene/room.hpp"

namespace roomqa::pipeline {

/// Ranges for drawing a room bank when no explicit rooms are given.
struct RoomSampling {
  int n_rooms = 20;
  Vec3 dims_min{3.0, 3.0, 2.4};
  Vec3 dims_max{10.0, 8.0, 4.0};
  double absorption_min = 0.1;
  double absorption_max = 0.6;
  int max_order = 6;
};

struct PipelineConfig {
  std::uint64_t master_seed = 1;
  int sample_rate_hz = 32000;
  std::vector<scene::RoomSpec> rooms;  // empty: draw from room_sampling
  RoomSampling room_sampling;
  int n_scenes = 100;
  double dual_fraction = 0.6;  // share of two-source scenes
  std::string clip_pool;       // directory holding clips.csv
  std::string templates;       // JSON bank; empty uses the built-in bank
  acoustics::LossWeights loss_weights;
  std::string output_dir = "out";
  int workers = 1;

  double clip_seconds = 10.0;
  double target_rms_dbfs = -20.0;
  scene::DepthConfig depth;
  /// Clips are split into this many disjoint groups and each room draws from
  /// one group, so rooms can be split without sharing clips.
  int clip_groups = 5;
  double train_fraction = 0.8;
  /// Type III pairs kept per dual-source sample after balancing.
  double type3_per_dual_sample = 4.0;

  /// Throws with a field-level message ("n_scenes: must be >= 1").
  void validate() const;
  /// Explicit rooms, or the bank drawn from room_sampling and master_seed.
  std::vector<scene::RoomSpec> room_bank() const;
};

nlohmann::json to_json(const PipelineConfig& c);
PipelineConfig config_from_json(const nlohmann::json& j);
PipelineConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const PipelineConfig& c);

}  // namespace roomqa::pipeline
