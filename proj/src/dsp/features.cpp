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

#include "roomqa/dsp/features.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <json.hpp>

namespace roomqa::dsp {

FeatureTensor assemble_features(const Waveform& w, const FeatureConfig& cfg) {
  if (!w.binaural()) throw Error("binaural required");
  w.validate();

  const Spectrogram spec = stft(w, cfg.stft);
  const MelFilterbank fb(cfg.n_mels, cfg.stft.window_len, w.sample_rate_hz);

  FeatureTensor t;
  t.frames = spec.frames();
  t.bands = fb.bands();
  t.sample_rate_hz = w.sample_rate_hz;
  t.config = cfg;
  t.data.resize(FeatureTensor::kChannels * t.frames, t.bands);

  t.channel(0) = log_mel(spec.channels[0], fb, cfg.log_eps).array();
  t.channel(1) = log_mel(spec.channels[1], fb, cfg.log_eps).array();
  auto [cos_mel, sin_mel] = ipd_mel(spec.channels[0], spec.channels[1], fb);
  t.channel(2) = cos_mel.array();
  t.channel(3) = sin_mel.array();
  return t;
}

namespace {

void put_f32_le(std::ostream& os, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  const char bytes[4] = {static_cast<char>(bits & 0xff),
                         static_cast<char>((bits >> 8) & 0xff),
                         static_cast<char>((bits >> 16) & 0xff),
                         static_cast<char>((bits >> 24) & 0xff)};
  os.write(bytes, 4);
}

float get_f32_le(const unsigned char* p) {
  const std::uint32_t bits = std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
                             (std::uint32_t(p[2]) << 16) |
                             (std::uint32_t(p[3]) << 24);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

}  // namespace

void write_feature_tensor(const std::filesystem::path& stem,
                          const FeatureTensor& t) {
  auto raster = stem;
  raster += ".f32";
  std::ofstream os(raster, std::ios::binary);
  if (!os) throw Error("cannot write " + raster.string());
  for (Index r = 0; r < t.data.rows(); ++r)
    for (Index c = 0; c < t.data.cols(); ++c)
      put_f32_le(os, static_cast<float>(t.data(r, c)));

  nlohmann::ordered_json meta;
  meta["shape"] = {FeatureTensor::kChannels, t.frames, t.bands};
  meta["dtype"] = "float32";
  meta["byte_order"] = "little";
  meta["sample_rate"] = t.sample_rate_hz;
  meta["window"] = "hann";
  meta["window_len"] = t.config.stft.window_len;
  meta["hop"] = t.config.stft.hop;
  meta["padding"] = "reflect";
  meta["n_mels"] = t.config.n_mels;
  meta["mel_scale"] = "htk";
  meta["log_eps"] = t.config.log_eps;
  meta["channel_order"] = FeatureTensor::kChannelOrder;
  auto sidecar = stem;
  sidecar += ".json";
  std::ofstream js(sidecar);
  if (!js) throw Error("cannot write " + sidecar.string());
  js << meta.dump(2) << "\n";
}

FeatureTensor read_feature_tensor(const std::filesystem::path& stem) {
  auto sidecar = stem;
  sidecar += ".json";
  std::ifstream js(sidecar);
  if (!js) throw Error("cannot read " + sidecar.string());
  const auto meta = nlohmann::json::parse(js);

  FeatureTensor t;
  t.frames = meta.at("shape").at(1).get<Index>();
  t.bands = meta.at("shape").at(2).get<Index>();
  t.sample_rate_hz = meta.at("sample_rate").get<int>();
  t.config.stft.window_len = meta.at("window_len").get<Index>();
  t.config.stft.hop = meta.at("hop").get<Index>();
  t.config.n_mels = meta.at("n_mels").get<int>();
  t.config.log_eps = meta.at("log_eps").get<double>();

  auto raster = stem;
  raster += ".f32";
  std::ifstream is(raster, std::ios::binary);
  if (!is) throw Error("cannot read " + raster.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
  const Index n = FeatureTensor::kChannels * t.frames * t.bands;
  if (static_cast<Index>(bytes.size()) != 4 * n)
    throw Error("feature raster size does not match sidecar shape");
  t.data.resize(FeatureTensor::kChannels * t.frames, t.bands);
  for (Index i = 0; i < n; ++i)
    t.data(i / t.bands, i % t.bands) = get_f32_le(bytes.data() + 4 * i);
  return t;
}

}  // namespace roomqa::dsp
