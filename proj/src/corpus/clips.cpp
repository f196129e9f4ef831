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

#include "roomqa/corpus/clips.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "roomqa/dsp/wav_io.hpp"
#include "roomqa/rng.hpp"

namespace roomqa::corpus {

namespace fs = std::filesystem;

void EventClip::validate(double seconds) const {
  audio.validate();
  if (audio.channels() != 1) throw Error("clip " + clip_id + " is not mono");
  const auto expected =
      static_cast<Index>(std::llround(seconds * audio.sample_rate_hz));
  if (audio.length() != expected)
    throw Error("clip " + clip_id + " has wrong duration");
  if ((audio.samples == 0.0).all()) throw Error("clip " + clip_id + " is silent");
  if (class_labels.empty()) throw Error("clip " + clip_id + " has no labels");
}

dsp::Waveform fit_to_duration(const dsp::Waveform& w, double seconds) {
  const auto n = static_cast<Index>(std::llround(seconds * w.sample_rate_hz));
  SampleMatrix<double> out = SampleMatrix<double>::Zero(w.channels(), n);
  const Index keep = std::min(n, w.length());
  out.leftCols(keep) = w.samples.leftCols(keep);
  return {std::move(out), w.sample_rate_hz};
}

ClipPool::ClipPool(std::vector<EventClip> clips) : clips_(std::move(clips)) {
  std::set<std::string> seen;
  for (const auto& c : clips_)
    if (!seen.insert(c.clip_id).second)
      throw Error("duplicate clip_id " + c.clip_id);
}

const EventClip& ClipPool::find(const std::string& clip_id) const {
  for (const auto& c : clips_)
    if (c.clip_id == clip_id) return c;
  throw Error("missing clip " + clip_id);
}

std::vector<std::string> ClipPool::vocabulary() const {
  std::set<std::string> names;
  for (const auto& c : clips_)
    names.insert(c.class_labels.begin(), c.class_labels.end());
  return {names.begin(), names.end()};
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else if (ch != '\r') {
      fields.back() += ch;
    }
  }
  if (quoted) throw Error("unterminated quote in csv");
  return fields;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ClipPool load_clip_pool(const fs::path& dir, int sample_rate_hz,
                        double seconds) {
  const fs::path csv = dir / "clips.csv";
  std::ifstream in(csv);
  if (!in) throw Error("cannot open " + csv.string());
  std::string line;
  if (!std::getline(in, line)) throw Error("empty clips.csv");
  const auto header = split_csv_line(line);
  if (header.size() < 3 || trim(header[0]) != "clip_id" ||
      trim(header[1]) != "path" || trim(header[2]) != "labels")
    throw Error("clips.csv header must be clip_id,path,labels");

  std::vector<EventClip> clips;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() < 3)
      throw Error("clips.csv line " + std::to_string(line_no) +
                  ": expected 3 fields");
    EventClip clip;
    clip.clip_id = trim(f[0]);
    clip.path = dir / trim(f[1]);
    std::stringstream labels(f[2]);
    std::string label;
    while (std::getline(labels, label, ';'))
      if (auto t = trim(label); !t.empty()) clip.class_labels.push_back(t);
    auto w = dsp::read_wav(clip.path);
    if (w.sample_rate_hz != sample_rate_hz)
      throw Error("clip " + clip.clip_id + " sample rate " +
                  std::to_string(w.sample_rate_hz) + " != " +
                  std::to_string(sample_rate_hz));
    clip.audio = fit_to_duration(w, seconds);
    clip.validate(seconds);
    clips.push_back(std::move(clip));
  }
  if (clips.empty()) throw Error("clip pool is empty");
  return ClipPool(std::move(clips));
}

namespace {

struct DemoClass {
  std::vector<std::string> labels;
  int kind;
};

const std::vector<DemoClass>& demo_classes() {
  static const std::vector<DemoClass> k = {
      {{"Speech"}, 0},
      {{"Bicycle", "Bicycle bell"}, 1},
      {{"Dog", "Animal"}, 2},
      {{"Siren"}, 3},
      {{"Wheeze"}, 4},
      {{"Sawing"}, 5},
      {{"Waterfall"}, 6},
      {{"Engine"}, 7},
      {{"Music", "Piano"}, 8},
      {{"Bird flight, flapping wings"}, 9},
      {{"Crackle"}, 10},
      {{"Pulleys"}, 11},
  };
  return k;
}

Signal<double> synth_event(int kind, Index n, double sr, Rng& rng) {
  Signal<double> y = Signal<double>::Zero(n);
  const double f0 = rng.uniform(0.8, 1.25);
  double lp = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sr;
    const double w = 2.0 * kPi * t;
    const double noise = rng.uniform(-1.0, 1.0);
    double v = 0.0;
    switch (kind) {
      case 0: {  // voiced syllables
        const double env = std::max(0.0, std::sin(w * 2.1 * f0));
        for (int h = 1; h <= 8; ++h) v += std::sin(w * 150.0 * f0 * h) / h;
        v *= env * env;
        break;
      }
      case 1: {  // ringing partials
        const double tau = std::fmod(t, 1.7);
        const double env = std::exp(-tau * 4.0);
        v = env * (std::sin(w * 2600.0 * f0) + 0.6 * std::sin(w * 3900.0 * f0));
        break;
      }
      case 2: {  // barks
        const double tau = std::fmod(t, 0.9);
        const double env = tau < 0.18 ? std::sin(kPi * tau / 0.18) : 0.0;
        v = env * (std::sin(w * 480.0 * f0) + 0.5 * std::sin(w * 960.0 * f0) +
                   0.3 * noise);
        break;
      }
      case 3:  // slow sweep around 900 Hz
        v = std::sin(2.0 * kPi * 900.0 * f0 * t -
                     (300.0 / 0.25) * (std::cos(2.0 * kPi * 0.25 * t) - 1.0));
        break;
      case 4:
        v = (0.6 * noise + std::sin(w * 420.0 * f0)) *
            (0.5 + 0.5 * std::sin(w * 0.4));
        break;
      case 5: {  // rhythmic broadband strokes
        const double env = std::pow(std::abs(std::sin(w * 1.1 * f0)), 3.0);
        v = env * noise;
        break;
      }
      case 6:
        lp += 0.08 * (noise - lp);
        v = 4.0 * lp;
        break;
      case 7:
        for (int h = 1; h <= 6; ++h) v += std::sin(w * 55.0 * f0 * h) / h;
        v += 0.2 * noise;
        break;
      case 8: {
        static constexpr double kChords[3][3] = {
            {261.6, 329.6, 392.0}, {293.7, 349.2, 440.0}, {246.9, 329.6, 415.3}};
        const int c = static_cast<int>(t) % 3;
        const double env = std::exp(-std::fmod(t, 1.0) * 3.0);
        for (double f : kChords[c]) v += std::sin(w * f * f0);
        v *= env / 3.0;
        break;
      }
      case 9: {
        const double env = std::max(0.0, std::sin(w * 11.0 * f0));
        v = env * noise;
        break;
      }
      case 10:
        v = rng.bernoulli(0.002) ? rng.uniform(-1.0, 1.0) : 0.0;
        break;
      default: {
        const double tau = std::fmod(t, 2.3);
        v = tau < 1.2 ? std::sin(w * (700.0 + 400.0 * tau) * f0) * 0.7 +
                            0.2 * noise
                      : 0.0;
        break;
      }
    }
    y(i) = v;
  }
  const double peak = y.abs().maxCoeff();
  if (peak > 0.0) y *= rng.uniform(0.2, 0.6) / peak;
  return y;
}

}  // namespace

void write_demo_clip_pool(const fs::path& dir, int n_clips, std::uint64_t seed,
                          int sample_rate_hz, double seconds) {
  if (n_clips < 1) throw Error("n_clips must be positive");
  fs::create_directories(dir);
  std::ofstream csv(dir / "clips.csv");
  if (!csv) throw Error("cannot write " + (dir / "clips.csv").string());
  csv << "clip_id,path,labels\n";
  const auto& classes = demo_classes();
  const auto n = static_cast<Index>(std::llround(seconds * sample_rate_hz));
  for (int i = 0; i < n_clips; ++i) {
    const auto& cls = classes[static_cast<std::size_t>(i) % classes.size()];
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(i), 7));
    char id[32];
    std::snprintf(id, sizeof id, "clip%04d", i);
    const std::string file = std::string(id) + ".wav";
    auto y = synth_event(cls.kind, n, sample_rate_hz, rng);
    dsp::write_wav(dir / file, dsp::Waveform::mono(y, sample_rate_hz),
                   dsp::WavFormat::kPcm16);
    std::string labels;
    for (const auto& l : cls.labels) labels += (labels.empty() ? "" : ";") + l;
    csv << id << ',' << file << ',' << csv_quote(labels) << '\n';
  }
}

}  // namespace roomqa::corpus
