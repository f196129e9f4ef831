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
#include "roomqa/dsp/waveform.hpp"

namespace roomqa::acoustics {

/// Two-channel (left, right) room impulse response.
struct BinauralRir {
  SampleMatrix<double> taps;  // 2 x length
  int sample_rate_hz = dsp::kDefaultSampleRate;

  static BinauralRir from_channels(const Signal<double>& left,
                                   const Signal<double>& right, int sr);

  Signal<double> left() const { return taps.row(0).transpose(); }
  Signal<double> right() const { return taps.row(1).transpose(); }
  Signal<double> channel(Index c) const { return taps.row(c).transpose(); }
  Index length() const { return taps.cols(); }

  /// Equal lengths, finite, and a nonzero sample in each channel.
  void validate() const;

  dsp::Waveform as_waveform() const { return {taps, sample_rate_hz}; }
  static BinauralRir from_waveform(const dsp::Waveform& w);
};

}  // namespace roomqa::acoustics
