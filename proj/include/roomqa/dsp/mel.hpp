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

#include <utility>

#include "roomqa/common.hpp"

namespace roomqa::dsp {

inline constexpr int kDefaultMelBands = 128;
inline constexpr double kDefaultLogEps = 1e-10;

double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// Triangular filterbank on the HTK mel scale, bands x one-sided bins.
/// Triangles peak at 1 (no area normalization).
class MelFilterbank {
 public:
  MelFilterbank(int n_bands, Index n_fft, double sample_rate_hz,
                double fmin_hz = 0.0, double fmax_hz = -1.0);

  const Eigen::MatrixXd& weights() const { return weights_; }
  Index bands() const { return weights_.rows(); }
  Index bins() const { return weights_.cols(); }
  Eigen::VectorXd row_sums() const { return weights_.rowwise().sum(); }
  /// Centre frequency of each band in Hz.
  const Eigen::VectorXd& centers_hz() const { return centers_hz_; }

 private:
  Eigen::MatrixXd weights_;
  Eigen::VectorXd centers_hz_;
};

/// log(sum_k M(f,k) |X(m,k)|^2 + eps), frames x bands.
Eigen::MatrixXd log_mel(const Eigen::MatrixXcd& spec, const MelFilterbank& fb,
                        double eps = kDefaultLogEps);

/// Filterbank-weighted cos/sin of the per-bin interaural phase
/// angle(X_L / X_R). Bins where either channel is exactly zero contribute
/// phase 0.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> ipd_mel(
    const Eigen::MatrixXcd& left, const Eigen::MatrixXcd& right,
    const MelFilterbank& fb);

}  // namespace roomqa::dsp
