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
#include <string>
#include <vector>

#include "roomqa/dsp/waveform.hpp"

namespace roomqa::corpus {

inline constexpr double kClipSeconds = 10.0;

/// Mono event recording with one or more class labels.
struct EventClip {
  std::string clip_id;
  dsp::Waveform audio;
  std::vector<std::string> class_labels;
  std::filesystem::path path;

  /// Mono, exactly `seconds` long, non-silent.
  void validate(double seconds = kClipSeconds) const;
};

/// Zero-pads or trims every channel to round(seconds * sample_rate) samples.
dsp::Waveform fit_to_duration(const dsp::Waveform& w, double seconds);

class ClipPool {
 public:
  ClipPool() = default;
  explicit ClipPool(std::vector<EventClip> clips);

  const std::vector<EventClip>& clips() const { return clips_; }
  std::size_t size() const { return clips_.size(); }
  /// Throws when the id is unknown.
  const EventClip& find(const std::string& clip_id) const;
  /// Sorted, de-duplicated class names.
  std::vector<std::string> vocabulary() const;

 private:
  std::vector<EventClip> clips_;
};

/// Reads `<dir>/clips.csv` (header clip_id,path,labels; labels separated by
/// ';'; paths relative to dir). Clips are padded/trimmed to `seconds`.
ClipPool load_clip_pool(const std::filesystem::path& dir, int sample_rate_hz,
                        double seconds = kClipSeconds);

/// Writes a small synthetic pool (tonal, harmonic and noise-based events
/// under AudioSet-style names) as PCM16 WAVs plus clips.csv.
void write_demo_clip_pool(const std::filesystem::path& dir, int n_clips,
                          std::uint64_t seed, int sample_rate_hz,
                          double seconds = kClipSeconds);

/// Minimal RFC 4180 record splitter (quoted fields, doubled quotes).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace roomqa::corpus
