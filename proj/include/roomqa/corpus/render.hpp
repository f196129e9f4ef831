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

#include <span>
#include <string>
#include <vector>

#include "roomqa/acoustics/rir.hpp"
#include "roomqa/corpus/clips.hpp"
#include "roomqa/geometry/labels.hpp"
#include "roomqa/scene/room.hpp"

namespace roomqa::corpus {

/// Ground truth of one source, recomputable from the scene geometry.
struct SourceTruth {
  std::string clip_id;
  std::vector<std::string> class_labels;
  Vec3 position = Vec3::Zero();
  geometry::SphericalDoa doa;
  geometry::DirectionLabel label;

  /// Name used in questions and rationales (the first class label).
  const std::string& display_name() const { return class_labels.front(); }
};

/// Everything about a rendered sample except its audio.
struct SampleRecord {
  std::string sample_id;
  std::size_t scene_index = 0;
  scene::SceneSpec scene;
  std::vector<SourceTruth> sources;
  std::string audio_path;
  std::vector<std::string> rir_paths;
  std::string depth_path;

  const std::string& room_id() const { return scene.room.room_id; }
};

struct RenderedSample {
  SampleRecord record;
  dsp::Waveform audio;
};

struct RenderConfig {
  double clip_seconds = kClipSeconds;
  double target_rms_dbfs = -20.0;
};

std::vector<SourceTruth> derive_truth(const scene::SceneSpec& scene);

/// Convolves each clip with its source's RIR (per ear), truncates to the
/// clip length, sums the sources and applies one loudness normalization.
RenderedSample render_sample(const scene::SceneSpec& scene,
                             std::span<const EventClip* const> clips,
                             std::span<const acoustics::BinauralRir> rirs,
                             const RenderConfig& cfg = {});

/// Same mix without normalization (exposed for linearity checks).
dsp::Waveform mix_sources(std::span<const EventClip* const> clips,
                          std::span<const acoustics::BinauralRir> rirs,
                          Index out_len);

}  // namespace roomqa::corpus
