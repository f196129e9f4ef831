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

#include <vector>

#include "roomqa/dsp/waveform.hpp"

namespace roomqa::dsp {

struct StftConfig {
  Index window_len = 1024;
  Index hop = 320;
};

/// Per-channel complex STFT, frames x one-sided bins (window_len/2 + 1).
struct Spectrogram {
  std::vector<Eigen::MatrixXcd> channels;
  Index window_len = 1024;
  Index hop = 320;

  Index frames() const { return channels.empty() ? 0 : channels[0].rows(); }
  Index bins() const { return channels.empty() ? 0 : channels[0].cols(); }
};

/// Periodic Hann window of length n.
Eigen::ArrayXd hann_window(Index n);

/// Reflection-pads `x` by `pad` samples on both ends (edge sample not
/// repeated). Inputs shorter than pad + 1 reflect repeatedly.
Signal<double> reflect_pad(const Signal<double>& x, Index pad);

/// Frame count for an unpadded input of `length` samples.
Index stft_frame_count(Index length, const StftConfig& cfg = {});

/// Hann-windowed STFT with window_len/2 reflection padding on both ends.
/// Phase is referenced to the start of each frame.
Spectrogram stft(const Waveform& w, const StftConfig& cfg = {});

}  // namespace roomqa::dsp
