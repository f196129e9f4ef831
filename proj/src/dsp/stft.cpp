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

#include "roomqa/dsp/stft.hpp"

#include <unsupported/Eigen/FFT>

namespace roomqa::dsp {

Eigen::ArrayXd hann_window(Index n) {
  Eigen::ArrayXd w(n);
  for (Index i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) /
                                static_cast<double>(n));
  return w;
}

Signal<double> reflect_pad(const Signal<double>& x, Index pad) {
  const Index len = x.size();
  if (len == 0) throw Error("empty input");
  Signal<double> out(len + 2 * pad);
  const Index period = 2 * (len - 1);
  for (Index i = 0; i < out.size(); ++i) {
    Index j = i - pad;
    if (period == 0) {
      j = 0;
    } else {
      j %= period;
      if (j < 0) j += period;
      if (j >= len) j = period - j;
    }
    out[i] = x[j];
  }
  return out;
}

Index stft_frame_count(Index length, const StftConfig& cfg) {
  const Index padded = length + 2 * (cfg.window_len / 2);
  return 1 + (padded - cfg.window_len) / cfg.hop;
}

Spectrogram stft(const Waveform& w, const StftConfig& cfg) {
  if (w.length() < 1) throw Error("empty input");
  if (cfg.window_len < 2 || cfg.window_len % 2 != 0 || cfg.hop < 1)
    throw Error("invalid STFT geometry");

  const Index n = cfg.window_len;
  const Index frames = stft_frame_count(w.length(), cfg);
  const Index bins = n / 2 + 1;
  const Eigen::ArrayXd window = hann_window(n);

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> frame(n);
  std::vector<std::complex<double>> spectrum;

  Spectrogram out;
  out.window_len = n;
  out.hop = cfg.hop;
  for (Index c = 0; c < w.channels(); ++c) {
    const Signal<double> padded = reflect_pad(w.channel(c), n / 2);
    Eigen::MatrixXcd x(frames, bins);
    for (Index m = 0; m < frames; ++m) {
      const Index start = m * cfg.hop;
      for (Index i = 0; i < n; ++i) frame[i] = padded[start + i] * window[i];
      fft.fwd(spectrum, frame);
      for (Index k = 0; k < bins; ++k) x(m, k) = spectrum[k];
    }
    out.channels.push_back(std::move(x));
  }
  return out;
}

}  // namespace roomqa::dsp
