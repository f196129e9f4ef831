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

#include "roomqa/acoustics/rir.hpp"

namespace roomqa::acoustics {

BinauralRir BinauralRir::from_channels(const Signal<double>& left,
                                       const Signal<double>& right, int sr) {
  if (left.size() != right.size()) throw Error("channel length mismatch");
  BinauralRir rir;
  rir.taps.resize(2, left.size());
  rir.taps.row(0) = left.transpose();
  rir.taps.row(1) = right.transpose();
  rir.sample_rate_hz = sr;
  return rir;
}

BinauralRir BinauralRir::from_waveform(const dsp::Waveform& w) {
  if (!w.binaural()) throw Error("binaural required");
  return {w.samples, w.sample_rate_hz};
}

void BinauralRir::validate() const {
  if (taps.rows() != 2) throw Error("RIR must have two channels");
  if (taps.cols() == 0) throw Error("empty channel");
  if (!taps.allFinite()) throw Error("non-finite RIR tap");
  for (Index c = 0; c < 2; ++c)
    if ((taps.row(c) == 0.0).all()) throw Error("all-zero RIR channel");
}

}  // namespace roomqa::acoustics
