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

#include "roomqa/dsp/convolve.hpp"

namespace roomqa::dsp {

std::vector<Signal<double>> fft_convolve_many(
    const Signal<double>& x, std::span<const Signal<double>> kernels,
    Index out_len) {
  if (x.size() == 0) throw Error("empty operand");
  Index max_h = 0;
  for (const auto& h : kernels) {
    if (h.size() == 0) throw Error("empty operand");
    max_h = std::max(max_h, h.size());
  }
  std::vector<Signal<double>> out;
  out.reserve(kernels.size());
  if (kernels.empty()) return out;

  const Index nfft = detail::next_pow2(x.size() + max_h - 1);
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);

  std::vector<double> buf(nfft, 0.0);
  std::copy(x.data(), x.data() + x.size(), buf.begin());
  std::vector<std::complex<double>> fx, fh;
  fft.fwd(fx, buf);

  std::vector<double> time;
  for (const auto& h : kernels) {
    const Index full = x.size() + h.size() - 1;
    const Index n = out_len < 0 ? full : std::min(out_len, full);
    std::fill(buf.begin(), buf.end(), 0.0);
    std::copy(h.data(), h.data() + h.size(), buf.begin());
    fft.fwd(fh, buf);
    for (std::size_t k = 0; k < fh.size(); ++k) fh[k] *= fx[k];
    fft.inv(time, fh, nfft);
    Signal<double> y = Signal<double>::Zero(out_len < 0 ? full : out_len);
    std::copy(time.begin(), time.begin() + n, y.data());
    out.push_back(std::move(y));
  }
  return out;
}

}  // namespace roomqa::dsp
