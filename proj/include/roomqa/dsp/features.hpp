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
#include <filesystem>
#include <string>

#include "roomqa/dsp/mel.hpp"
#include "roomqa/dsp/stft.hpp"

namespace roomqa::dsp {

struct FeatureConfig {
  StftConfig stft;
  int n_mels = kDefaultMelBands;
  double log_eps = kDefaultLogEps;
};

/// 4 x frames x bands stack in the order
/// [log-mel L, log-mel R, IPD-cos mel, IPD-sin mel], stored C-order.
struct FeatureTensor {
  static constexpr Index kChannels = 4;
  static constexpr std::array<const char*, 4> kChannelOrder = {
      "mel_left", "mel_right", "ipd_cos_mel", "ipd_sin_mel"};

  Index frames = 0;
  Index bands = 0;
  int sample_rate_hz = kDefaultSampleRate;
  FeatureConfig config;
  SampleMatrix<double> data;  // (4 * frames) x bands

  auto channel(Index c) { return data.middleRows(c * frames, frames); }
  auto channel(Index c) const { return data.middleRows(c * frames, frames); }
  double at(Index c, Index m, Index f) const { return data(c * frames + m, f); }
};

/// Builds the feature tensor from a binaural clip.
FeatureTensor assemble_features(const Waveform& w, const FeatureConfig& cfg = {});

/// Writes `<stem>.f32` (little-endian float32, C-order) and `<stem>.json`.
void write_feature_tensor(const std::filesystem::path& stem,
                          const FeatureTensor& t);

FeatureTensor read_feature_tensor(const std::filesystem::path& stem);

}  // namespace roomqa::dsp
