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

#include "roomqa/dsp/loudness.hpp"

#include <cmath>

namespace roomqa::dsp {

double rms(const Waveform& w) {
  if (w.samples.size() == 0) return 0.0;
  return std::sqrt(w.samples.square().mean());
}

double rms_dbfs(const Waveform& w) { return 20.0 * std::log10(rms(w)); }

Waveform normalize_loudness(const Waveform& w, double target_rms_dbfs) {
  const double current = rms(w);
  if (current == 0.0) return w;
  const double gain = std::pow(10.0, target_rms_dbfs / 20.0) / current;
  Waveform out = w;
  out.samples *= gain;
  return out;
}

}  // namespace roomqa::dsp
