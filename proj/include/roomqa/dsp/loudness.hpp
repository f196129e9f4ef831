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

#include "roomqa/dsp/waveform.hpp"

namespace roomqa::dsp {

inline constexpr double kDefaultTargetDbfs = -20.0;

/// RMS over every sample of every channel.
double rms(const Waveform& w);

double rms_dbfs(const Waveform& w);

/// Applies one global gain so the combined-channel RMS hits
/// 10^(target_rms_dbfs/20). Silent input is returned unchanged.
Waveform normalize_loudness(const Waveform& w,
                            double target_rms_dbfs = kDefaultTargetDbfs);

}  // namespace roomqa::dsp
