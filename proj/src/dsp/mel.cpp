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

#include "roomqa/dsp/mel.hpp"

#include <cmath>

namespace roomqa::dsp {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank::MelFilterbank(int n_bands, Index n_fft, double sample_rate_hz,
                             double fmin_hz, double fmax_hz) {
  if (n_bands < 1 || n_fft < 2 || sample_rate_hz <= 0)
    throw Error("invalid filterbank geometry");
  if (fmax_hz < 0) fmax_hz = sample_rate_hz / 2.0;
  if (!(fmin_hz >= 0 && fmin_hz < fmax_hz))
    throw Error("invalid filterbank range");

  const Index bins = n_fft / 2 + 1;
  const double mel_lo = hz_to_mel(fmin_hz);
  const double mel_hi = hz_to_mel(fmax_hz);
  Eigen::VectorXd edges(n_bands + 2);
  for (int i = 0; i < n_bands + 2; ++i)
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (n_bands + 1));

  weights_ = Eigen::MatrixXd::Zero(n_bands, bins);
  centers_hz_ = edges.segment(1, n_bands);
  const double bin_hz = sample_rate_hz / static_cast<double>(n_fft);
  for (int b = 0; b < n_bands; ++b) {
    const double lo = edges[b], mid = edges[b + 1], hi = edges[b + 2];
    for (Index k = 0; k < bins; ++k) {
      const double f = k * bin_hz;
      const double rise = (f - lo) / (mid - lo);
      const double fall = (hi - f) / (hi - mid);
      weights_(b, k) = std::max(0.0, std::min(rise, fall));
    }
    if (weights_.row(b).maxCoeff() <= 0.0) {
      const Index nearest = std::min<Index>(
          bins - 1, static_cast<Index>(std::lround(mid / bin_hz)));
      weights_(b, nearest) = 1.0;
    }
  }
}

Eigen::MatrixXd log_mel(const Eigen::MatrixXcd& spec, const MelFilterbank& fb,
                        double eps) {
  if (spec.cols() != fb.bins()) throw Error("filterbank/bin count mismatch");
  const Eigen::MatrixXd power = spec.cwiseAbs2();
  Eigen::MatrixXd mel = power * fb.weights().transpose();
  return (mel.array() + eps).log().matrix();
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> ipd_mel(
    const Eigen::MatrixXcd& left, const Eigen::MatrixXcd& right,
    const MelFilterbank& fb) {
  if (left.rows() != right.rows() || left.cols() != right.cols())
    throw Error("channel shape mismatch");
  if (left.cols() != fb.bins()) throw Error("filterbank/bin count mismatch");

  Eigen::MatrixXd c(left.rows(), left.cols());
  Eigen::MatrixXd s(left.rows(), left.cols());
  for (Index k = 0; k < left.cols(); ++k) {
    for (Index m = 0; m < left.rows(); ++m) {
      const std::complex<double> l = left(m, k), r = right(m, k);
      const std::complex<double> cross = l * std::conj(r);
      const double mag = std::abs(cross);
      if (l == 0.0 || r == 0.0 || mag == 0.0) {
        c(m, k) = 1.0;
        s(m, k) = 0.0;
      } else {
        c(m, k) = cross.real() / mag;
        s(m, k) = cross.imag() / mag;
      }
    }
  }
  const Eigen::MatrixXd wt = fb.weights().transpose();
  return {c * wt, s * wt};
}

}  // namespace roomqa::dsp
