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

namespace roomqa::dsp {

inline constexpr int kDefaultSampleRate = 32000;

/// One or two equal-length channels of real samples, nominally in [-1, 1].
template <typename Scalar>
struct BasicWaveform {
  SampleMatrix<Scalar> samples;  // channels x length
  int sample_rate_hz = kDefaultSampleRate;

  BasicWaveform() = default;
  BasicWaveform(SampleMatrix<Scalar> s, int sr)
      : samples(std::move(s)), sample_rate_hz(sr) {}

  static BasicWaveform mono(const Signal<Scalar>& x, int sr) {
    SampleMatrix<Scalar> s(1, x.size());
    s.row(0) = x.transpose();
    return {std::move(s), sr};
  }
  static BasicWaveform stereo(const Signal<Scalar>& left,
                              const Signal<Scalar>& right, int sr) {
    if (left.size() != right.size())
      throw Error("channel length mismatch");
    SampleMatrix<Scalar> s(2, left.size());
    s.row(0) = left.transpose();
    s.row(1) = right.transpose();
    return {std::move(s), sr};
  }

  Index channels() const { return samples.rows(); }
  Index length() const { return samples.cols(); }
  bool binaural() const { return channels() == 2; }
  double duration_s() const {
    return static_cast<double>(length()) / sample_rate_hz;
  }

  Signal<Scalar> channel(Index c) const { return samples.row(c).transpose(); }

  /// Throws if the channel count or sample values are out of contract.
  void validate() const {
    if (channels() < 1 || channels() > 2)
      throw Error("waveform must have 1 or 2 channels");
    if (sample_rate_hz <= 0) throw Error("sample rate must be positive");
    if (!samples.allFinite()) throw Error("non-finite sample");
  }
};

using Waveform = BasicWaveform<double>;

}  // namespace roomqa::dsp
