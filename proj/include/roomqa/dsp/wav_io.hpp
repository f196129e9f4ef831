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

#include <filesystem>

#include "roomqa/dsp/waveform.hpp"

namespace roomqa::dsp {

enum class WavFormat { kPcm16, kFloat32 };

/// Reads PCM 16-bit or IEEE float 32-bit little-endian WAV.
Waveform read_wav(const std::filesystem::path& path);

/// PCM16 output is clipped to [-1, 1) and rounded to nearest.
void write_wav(const std::filesystem::path& path, const Waveform& w,
               WavFormat format = WavFormat::kFloat32);

}  // namespace roomqa::dsp
