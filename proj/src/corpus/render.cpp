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

#include "roomqa/corpus/render.hpp"

#include "roomqa/dsp/convolve.hpp"
#include "roomqa/dsp/loudness.hpp"

namespace roomqa::corpus {

std::vector<SourceTruth> derive_truth(const scene::SceneSpec& scene) {
  std::vector<SourceTruth> out;
  out.reserve(scene.sources.size());
  for (const auto& s : scene.sources) {
    SourceTruth t;
    t.clip_id = s.clip_id;
    t.class_labels = s.class_labels;
    t.position = s.position;
    t.doa = geometry::relative_spherical(scene.receiver, s.position);
    t.label = geometry::quantize_label(t.doa);
    out.push_back(std::move(t));
  }
  return out;
}

dsp::Waveform mix_sources(std::span<const EventClip* const> clips,
                          std::span<const acoustics::BinauralRir> rirs,
                          Index out_len) {
  if (clips.empty()) throw Error("no sources");
  if (clips.size() != rirs.size()) throw Error("missing RIR for source");
  const int sr = clips.front()->audio.sample_rate_hz;
  SampleMatrix<double> mix = SampleMatrix<double>::Zero(2, out_len);
  for (std::size_t s = 0; s < clips.size(); ++s) {
    if (clips[s] == nullptr) throw Error("missing clip");
    const auto& clip = *clips[s];
    if (clip.audio.channels() != 1) throw Error("clip " + clip.clip_id + " is not mono");
    if (clip.audio.sample_rate_hz != sr || rirs[s].sample_rate_hz != sr)
      throw Error("sample rate mismatch");
    const std::array<Signal<double>, 2> kernels = {rirs[s].left(),
                                                   rirs[s].right()};
    const auto ears = dsp::fft_convolve_many(clip.audio.channel(0), kernels,
                                             out_len);
    for (Index c = 0; c < 2; ++c) mix.row(c) += ears[c].transpose();
  }
  return {std::move(mix), sr};
}

RenderedSample render_sample(const scene::SceneSpec& scene,
                             std::span<const EventClip* const> clips,
                             std::span<const acoustics::BinauralRir> rirs,
                             const RenderConfig& cfg) {
  if (clips.size() != scene.sources.size())
    throw Error("clip count does not match scene sources");
  if (rirs.size() != scene.sources.size())
    throw Error("missing RIR for source");
  for (std::size_t s = 0; s < clips.size(); ++s)
    if (clips[s] == nullptr) throw Error("missing clip");
  const int sr = clips.front()->audio.sample_rate_hz;
  const auto n = static_cast<Index>(std::llround(cfg.clip_seconds * sr));

  RenderedSample out;
  out.record.scene = scene;
  out.record.sources = derive_truth(scene);
  out.audio = dsp::normalize_loudness(mix_sources(clips, rirs, n),
                                      cfg.target_rms_dbfs);
  return out;
}

}  // namespace roomqa::corpus
