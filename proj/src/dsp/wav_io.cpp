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

#include "roomqa/dsp/wav_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace roomqa::dsp {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xfffe;

std::uint32_t u32(const unsigned char* p) {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
         (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
}
std::uint16_t u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff);
}
void put_u16(std::vector<unsigned char>& b, std::uint16_t v) {
  b.push_back(v & 0xff);
  b.push_back((v >> 8) & 0xff);
}

}  // namespace

Waveform read_wav(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                         std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw Error("not a RIFF/WAVE file: " + path.string());

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_len = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t len = u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + len > bytes.size()) throw Error("truncated WAV chunk");
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (len < 16) throw Error("short fmt chunk");
      format = u16(chunk + 8);
      channels = u16(chunk + 10);
      rate = u32(chunk + 12);
      bits = u16(chunk + 22);
      if (format == kFormatExtensible && len >= 40) format = u16(chunk + 32);
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_len = len;
    }
    pos = body + len + (len & 1);
  }
  if (!data || channels == 0) throw Error("WAV missing fmt or data chunk");
  if (channels > 2) throw Error("only mono or stereo WAV supported");

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool f32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !f32) throw Error("unsupported WAV encoding");

  const std::size_t width = bits / 8;
  const Index frames = static_cast<Index>(data_len / (width * channels));
  SampleMatrix<double> s(channels, frames);
  for (Index i = 0; i < frames; ++i) {
    for (Index c = 0; c < channels; ++c) {
      const unsigned char* p = data + (i * channels + c) * width;
      if (pcm16) {
        s(c, i) = static_cast<std::int16_t>(u16(p)) / 32768.0;
      } else {
        const std::uint32_t raw = u32(p);
        float v;
        std::memcpy(&v, &raw, 4);
        s(c, i) = v;
      }
    }
  }
  return {std::move(s), static_cast<int>(rate)};
}

void write_wav(const std::filesystem::path& path, const Waveform& w,
               WavFormat format) {
  w.validate();
  const std::uint16_t channels = static_cast<std::uint16_t>(w.channels());
  const std::uint16_t bits = format == WavFormat::kPcm16 ? 16 : 32;
  const std::uint32_t block = channels * bits / 8;
  const std::uint32_t data_len = static_cast<std::uint32_t>(w.length()) * block;

  std::vector<unsigned char> b;
  b.reserve(44 + data_len);
  const char* riff = "RIFF";
  b.insert(b.end(), riff, riff + 4);
  put_u32(b, 36 + data_len);
  const char* wave = "WAVEfmt ";
  b.insert(b.end(), wave, wave + 8);
  put_u32(b, 16);
  put_u16(b, format == WavFormat::kPcm16 ? kFormatPcm : kFormatFloat);
  put_u16(b, channels);
  put_u32(b, static_cast<std::uint32_t>(w.sample_rate_hz));
  put_u32(b, static_cast<std::uint32_t>(w.sample_rate_hz) * block);
  put_u16(b, static_cast<std::uint16_t>(block));
  put_u16(b, bits);
  const char* data = "data";
  b.insert(b.end(), data, data + 4);
  put_u32(b, data_len);

  for (Index i = 0; i < w.length(); ++i) {
    for (Index c = 0; c < channels; ++c) {
      const double v = w.samples(c, i);
      if (format == WavFormat::kPcm16) {
        const double clipped = std::clamp(v, -1.0, 32767.0 / 32768.0);
        put_u16(b, static_cast<std::uint16_t>(
                       static_cast<std::int16_t>(std::lround(clipped * 32768.0))));
      } else {
        const float f = static_cast<float>(v);
        std::uint32_t raw;
        std::memcpy(&raw, &f, 4);
        put_u32(b, raw);
      }
    }
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os.write(reinterpret_cast<const char*>(b.data()),
           static_cast<std::streamsize>(b.size()));
}

}  // namespace roomqa::dsp
