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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <fstream>

#include <json.hpp>

#include "roomqa/dsp/convolve.hpp"
#include "roomqa/dsp/features.hpp"
#include "roomqa/dsp/loudness.hpp"
#include "roomqa/dsp/wav_io.hpp"
#include "support.hpp"

using namespace roomqa;
using namespace roomqa::dsp;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Signal<double> direct(const Signal<double>& x, const Signal<double>& h) {
  Signal<double> y = Signal<double>::Zero(x.size() + h.size() - 1);
  for (Index i = 0; i < x.size(); ++i)
    for (Index j = 0; j < h.size(); ++j) y[i + j] += x[i] * h[j];
  return y;
}

// numpy-style "reflect" padding, written independently of the library.
std::vector<double> np_reflect(const std::vector<double>& x, int pad) {
  const int n = static_cast<int>(x.size());
  std::vector<double> out;
  for (int i = -pad; i < n + pad; ++i) {
    int j = i;
    while (j < 0 || j >= n) j = j < 0 ? -j : 2 * (n - 1) - j;
    out.push_back(x[static_cast<std::size_t>(j)]);
  }
  return out;
}

Signal<double> tone(double freq, Index n, double sr, double amp = 1.0,
                    Index delay = 0) {
  Signal<double> x(n);
  for (Index i = 0; i < n; ++i)
    x[i] = amp * std::cos(2.0 * kPi * freq * static_cast<double>(i - delay) / sr);
  return x;
}

}  // namespace

TEST_CASE("fft_convolve matches the direct sum") {
  Rng rng(11);
  const auto x = testing::random_signal(rng, 100);
  const auto h = testing::random_signal(rng, 37);
  const auto y = fft_convolve(x, h);
  const auto ref = direct(x, h);
  REQUIRE(y.size() == 136);
  CHECK((y - ref).abs().maxCoeff() <= 1e-6 * ref.abs().maxCoeff());
}

TEST_CASE("fft_convolve identity and shifted delta") {
  Rng rng(12);
  const auto x = testing::random_signal(rng, 50);
  Signal<double> one(1);
  one << 1.0;
  CHECK((fft_convolve(x, one) - x).abs().maxCoeff() < 1e-12);

  Signal<double> delta = Signal<double>::Zero(40);
  delta[23] = 1.0;
  const auto y = fft_convolve(x, delta);
  CHECK(y.head(23).abs().maxCoeff() < 1e-12);
  CHECK((y.segment(23, 50) - x).abs().maxCoeff() < 1e-12);
}

TEST_CASE("fft_convolve is linear") {
  Rng rng(13);
  const auto x = testing::random_signal(rng, 300);
  const auto z = testing::random_signal(rng, 300);
  const auto h = testing::random_signal(rng, 64);
  const Signal<double> mix = 2.5 * x - 0.75 * z;
  const auto lhs = fft_convolve(mix, h);
  const Signal<double> rhs = 2.5 * fft_convolve(x, h) - 0.75 * fft_convolve(z, h);
  CHECK((lhs - rhs).abs().maxCoeff() < 1e-6);
}

TEST_CASE("fft_convolve rejects empty operands") {
  Signal<double> x = Signal<double>::Ones(4), e(0);
  CHECK_THROWS_WITH(fft_convolve(x, e), "empty operand");
  CHECK_THROWS_WITH(fft_convolve(e, x), "empty operand");
}

TEST_CASE("fft_convolve_many equals repeated fft_convolve, truncated") {
  Rng rng(14);
  const auto x = testing::random_signal(rng, 1000);
  const std::vector<Signal<double>> ks = {testing::random_signal(rng, 90),
                                          testing::random_signal(rng, 33)};
  const auto many = fft_convolve_many(x, ks, 1000);
  for (std::size_t k = 0; k < ks.size(); ++k) {
    REQUIRE(many[k].size() == 1000);
    const auto ref = direct(x, ks[k]);
    CHECK((many[k] - ref.head(1000)).abs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("normalize_loudness hits the target with one gain") {
  const int sr = 32000;
  // Sine with amplitude A has RMS A / sqrt(2); pick A for -30 dBFS.
  const double amp = std::sqrt(2.0) * std::pow(10.0, -30.0 / 20.0);
  const auto w = Waveform::mono(tone(1000.0, sr, sr, amp), sr);
  CHECK_THAT(rms_dbfs(w), WithinAbs(-30.0, 1e-6));
  const auto n = normalize_loudness(w, -20.0);
  CHECK_THAT(rms(n), WithinRel(std::pow(10.0, -1.0), 1e-6));

  Rng rng(3);
  const auto r = testing::random_signal(rng, 4000, 0.1);
  const Signal<double> l = 2.0 * r;
  const auto st = normalize_loudness(Waveform::stereo(l, r, sr), -20.0);
  for (Index i = 0; i < st.length(); ++i)
    if (std::abs(st.samples(1, i)) > 1e-9)
      CHECK_THAT(st.samples(0, i) / st.samples(1, i), WithinRel(2.0, 1e-9));

  const auto twice = normalize_loudness(st, -20.0);
  CHECK((twice.samples - st.samples).abs().maxCoeff() < 1e-9);
}

TEST_CASE("normalize_loudness leaves silence alone") {
  const auto w = Waveform::mono(Signal<double>::Zero(100), 32000);
  const auto n = normalize_loudness(w, -20.0);
  CHECK((n.samples == 0.0).all());
}

TEST_CASE("reflect_pad matches numpy reflect") {
  for (int n : {1, 2, 3, 5, 40}) {
    for (int pad : {0, 1, 3, 7, 512}) {
      std::vector<double> v(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i * 1.5 - 2.0;
      Signal<double> x = Eigen::Map<Signal<double>>(v.data(), n);
      const auto got = reflect_pad(x, pad);
      if (n == 1) {
        CHECK((got == v[0]).all());
        continue;
      }
      const auto ref = np_reflect(v, pad);
      REQUIRE(got.size() == static_cast<Index>(ref.size()));
      for (Index i = 0; i < got.size(); ++i)
        CHECK(got[i] == ref[static_cast<std::size_t>(i)]);
    }
  }
}

TEST_CASE("stft frame count and shapes") {
  CHECK(stft_frame_count(320000) == 1001);
  CHECK(stft_frame_count(1) == 1);
  CHECK(stft_frame_count(320) == 2);
  const auto s = stft(Waveform::mono(Signal<double>::Zero(8000), 32000));
  CHECK(s.frames() == 26);
  CHECK(s.bins() == 513);
  CHECK(s.channels[0].cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_WITH(stft(Waveform::mono(Signal<double>(0), 32000)), "empty input");
}

TEST_CASE("stft of a bin-centred tone peaks at that bin") {
  const int sr = 32000;
  const Index k0 = 64;  // 2000 Hz
  const auto w = Waveform::mono(tone(k0 * sr / 1024.0, 16000, sr), sr);
  const auto s = stft(w);
  for (Index m = 3; m < s.frames() - 3; ++m) {
    Index arg = 0;
    s.channels[0].row(m).cwiseAbs().maxCoeff(&arg);
    CHECK(arg == k0);
  }
}

TEST_CASE("stft of an impulse is flat at the window value") {
  Signal<double> x = Signal<double>::Zero(8000);
  x[1600] = 1.0;  // padded index 2112
  const auto s = stft(Waveform::mono(x, 32000));
  const auto w = hann_window(1024);
  // frame 5 starts at 1600 (offset 512); frame 6 at 1920 (offset 192)
  for (auto [m, off] : {std::pair<Index, Index>{5, 512}, {6, 192}}) {
    const Eigen::ArrayXd mag = s.channels[0].row(m).cwiseAbs().transpose();
    CHECK((mag - w[off]).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("stft satisfies Parseval per frame") {
  Rng rng(5);
  const auto x = testing::random_signal(rng, 5000);
  const auto s = stft(Waveform::mono(x, 32000));
  std::vector<double> v(x.data(), x.data() + x.size());
  const auto padded = np_reflect(v, 512);
  const auto w = hann_window(1024);
  for (Index m = 0; m < s.frames(); ++m) {
    double time = 0.0;
    for (Index n = 0; n < 1024; ++n) {
      const double y = padded[static_cast<std::size_t>(m * 320 + n)] * w[n];
      time += y * y;
    }
    const auto row = s.channels[0].row(m);
    double freq = std::norm(row(0)) + std::norm(row(512));
    for (Index k = 1; k < 512; ++k) freq += 2.0 * std::norm(row(k));
    freq /= 1024.0;
    CHECK_THAT(freq, WithinRel(time, 1e-5));
  }
}

TEST_CASE("mel filterbank shape and coverage") {
  const MelFilterbank fb(128, 1024, 32000);
  CHECK(fb.bands() == 128);
  CHECK(fb.bins() == 513);
  CHECK((fb.weights().array() >= 0.0).all());
  for (Index f = 0; f < fb.bands(); ++f) CHECK(fb.weights().row(f).maxCoeff() > 0.0);
  CHECK_THAT(mel_to_hz(hz_to_mel(1234.5)), WithinRel(1234.5, 1e-12));
  CHECK_THAT(hz_to_mel(1000.0), WithinRel(2595.0 * std::log10(1.0 + 1000.0 / 700.0), 1e-12));
}

TEST_CASE("log_mel floor, gain and tone band") {
  const MelFilterbank fb(128, 1024, 32000);
  const auto z = stft(Waveform::mono(Signal<double>::Zero(4000), 32000));
  CHECK((log_mel(z.channels[0], fb).array() - std::log(kDefaultLogEps)).abs().maxCoeff() < 1e-12);

  Rng rng(6);
  const auto x = testing::random_signal(rng, 6000);
  const auto a = log_mel(stft(Waveform::mono(x, 32000)).channels[0], fb);
  const Signal<double> x2 = 2.0 * x;
  const auto b = log_mel(stft(Waveform::mono(x2, 32000)).channels[0], fb);
  CHECK(((b - a).array() - std::log(4.0)).abs().maxCoeff() < 1e-6);

  const Index k0 = 100;
  const auto t = stft(Waveform::mono(tone(k0 * 32000.0 / 1024.0, 16000, 32000), 32000));
  const auto lm = log_mel(t.channels[0], fb);
  Index best_band = 0;
  fb.weights().col(k0).maxCoeff(&best_band);
  Index arg = 0;
  lm.row(20).maxCoeff(&arg);
  CHECK(arg == best_band);
}

TEST_CASE("ipd_mel on synthetic spectra matches the weighted phase sum") {
  const MelFilterbank fb(128, 1024, 32000);
  Rng rng(7);
  Eigen::MatrixXcd l(3, 513), r(3, 513);
  Eigen::MatrixXd dphi(3, 513);
  for (Index m = 0; m < 3; ++m)
    for (Index k = 0; k < 513; ++k) {
      const double a = rng.uniform(-kPi, kPi), b = rng.uniform(-kPi, kPi);
      l(m, k) = std::polar(rng.uniform(0.1, 2.0), a);
      r(m, k) = std::polar(rng.uniform(0.1, 2.0), b);
      dphi(m, k) = a - b;
    }
  l(1, 40) = 0.0;  // zero bin contributes phase 0
  dphi(1, 40) = 0.0;
  const auto [c, s] = ipd_mel(l, r, fb);
  const Eigen::MatrixXd c_ref = dphi.array().cos().matrix() * fb.weights().transpose();
  const Eigen::MatrixXd s_ref = dphi.array().sin().matrix() * fb.weights().transpose();
  CHECK((c - c_ref).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((s - s_ref).cwiseAbs().maxCoeff() < 1e-9);

  const auto [c2, s2] = ipd_mel(r, l, fb);
  CHECK((c2 - c).cwiseAbs().maxCoeff() < 1e-9);
  // the zeroed bin breaks exact antisymmetry only through cos, not sin
  CHECK((s2 + s).cwiseAbs().maxCoeff() < 1e-9);

  const auto [c3, s3] = ipd_mel(3.0 * l, 3.0 * r, fb);
  CHECK((c3 - c).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((s3 - s).cwiseAbs().maxCoeff() < 1e-9);

  const auto [ci, si] = ipd_mel(l.row(0), l.row(0), fb);
  CHECK((ci.row(0).transpose() - fb.row_sums()).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(si.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("interaural phase of a delayed tone") {
  const int sr = 32000;
  const Index k0 = 32, d = 3;
  const double omega = 2.0 * kPi * k0 / 1024.0;
  const auto l = tone(k0 * sr / 1024.0, 16000, sr);
  const auto r = tone(k0 * sr / 1024.0, 16000, sr, 1.0, d);
  const auto s = stft(Waveform::stereo(l, r, sr));
  for (Index m = 4; m < s.frames() - 4; ++m) {
    const double ipd = std::arg(s.channels[0](m, k0) / s.channels[1](m, k0));
    CHECK_THAT(ipd, WithinAbs(omega * d, 1e-6));
  }
}

TEST_CASE("assemble_features shape, finiteness and errors") {
  const Signal<double> z = Signal<double>::Zero(320000);
  const auto t = assemble_features(Waveform::stereo(z, z, 32000));
  CHECK(t.frames == 1001);
  CHECK(t.bands == 128);
  CHECK(t.data.rows() == 4 * 1001);

  Rng rng(8);
  const auto x = testing::random_signal(rng, 20000);
  const auto same = assemble_features(Waveform::stereo(x, x, 32000));
  CHECK(same.channel(3).abs().maxCoeff() < 1e-12);
  CHECK(same.data.allFinite());

  const auto y = testing::random_signal(rng, 20000);
  const auto f = assemble_features(Waveform::stereo(x, y, 32000));
  const double bound = MelFilterbank(128, 1024, 32000).row_sums().maxCoeff();
  CHECK(f.channel(2).abs().maxCoeff() <= bound + 1e-9);
  CHECK(f.channel(3).abs().maxCoeff() <= bound + 1e-9);
  CHECK(f.frames == stft_frame_count(20000));

  CHECK_THROWS_WITH(assemble_features(Waveform::mono(x, 32000)), "binaural required");
}

TEST_CASE("feature tensor file round trip") {
  Rng rng(9);
  const auto x = testing::random_signal(rng, 5000);
  const auto y = testing::random_signal(rng, 5000);
  const auto f = assemble_features(Waveform::stereo(x, y, 32000));
  const auto dir = testing::scratch_dir("features");
  write_feature_tensor(dir / "t", f);
  CHECK(std::filesystem::file_size(dir / "t.f32") ==
        static_cast<std::uintmax_t>(4 * f.frames * 128 * 4));
  std::ifstream in(dir / "t.json");
  const auto meta = nlohmann::json::parse(in);
  CHECK(meta.at("shape") == nlohmann::json::array({4, f.frames, 128}));
  CHECK(meta.at("hop") == 320);
  CHECK(meta.at("channel_order").size() == 4);
  const auto g = read_feature_tensor(dir / "t");
  CHECK(g.frames == f.frames);
  CHECK((g.data - f.data.cast<float>().cast<double>()).abs().maxCoeff() == 0.0);
}

TEST_CASE("wav round trip") {
  Rng rng(10);
  const auto l = testing::random_signal(rng, 1234, 0.9);
  const auto r = testing::random_signal(rng, 1234, 0.9);
  const auto w = Waveform::stereo(l, r, 16000);
  const auto dir = testing::scratch_dir("wav");
  write_wav(dir / "f.wav", w, WavFormat::kFloat32);
  const auto f = read_wav(dir / "f.wav");
  CHECK(f.sample_rate_hz == 16000);
  CHECK((f.samples - w.samples.cast<float>().cast<double>()).abs().maxCoeff() == 0.0);
  write_wav(dir / "p.wav", w, WavFormat::kPcm16);
  const auto p = read_wav(dir / "p.wav");
  CHECK((p.samples - w.samples).abs().maxCoeff() <= 1.0 / 32767.0);
}
