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

#include <array>

#include "roomqa/acoustics/rir.hpp"

namespace roomqa::acoustics {

inline constexpr Index kDistanceBins = 21;
inline constexpr Index kAzimuthBins = 360;
inline constexpr Index kElevationBins = 180;
inline constexpr double kDefaultEdcEps = 1e-8;

/// Weights of the binaural (alpha), overall (eta) and EDC (lambda) terms.
/// The default is the joint-training preset.
struct LossWeights {
  std::array<double, 3> alpha{1250.0, 1.0, 2.0};  // cls, dis, doa
  std::array<double, 2> eta{1.0, 0.01};           // binaural, geo
  double lambda_edc = 0.1;

  static LossWeights joint_training() { return {}; }
  /// Audio-only pretraining uses alpha_1 = 1.
  static LossWeights audio_pretraining() {
    LossWeights w;
    w.alpha = {1.0, 1.0, 2.0};
    return w;
  }

  void validate() const;
};

/// Mean over t of |10 log10(pred + eps) - 10 log10(ref + eps)|.
double edc_loss(const Signal<double>& pred_edc, const Signal<double>& ref_edc,
                double eps = kDefaultEdcEps);

/// Mean absolute tap error plus lambda times the channel-averaged EDC loss.
/// Works for any channel count; pred and ref must share a shape.
double geo_loss(const SampleMatrix<double>& pred,
                const SampleMatrix<double>& ref, double lambda_edc,
                double eps = kDefaultEdcEps);
double geo_loss(const BinauralRir& pred, const BinauralRir& ref,
                double lambda_edc);

/// d geo_loss / d pred. The L1 and |.| subgradients at zero are 0.
SampleMatrix<double> geo_loss_grad(const SampleMatrix<double>& pred,
                                   const SampleMatrix<double>& ref,
                                   double lambda_edc,
                                   double eps = kDefaultEdcEps);
SampleMatrix<double> geo_loss_grad(const BinauralRir& pred,
                                   const BinauralRir& ref, double lambda_edc);

/// log-sum-exp(logits) - logits[target].
double softmax_cross_entropy(const Eigen::VectorXd& logits, Index target);

/// Mean over classes of the sigmoid binary cross-entropy.
double mean_binary_cross_entropy(const Eigen::VectorXd& logits,
                                 const Eigen::VectorXd& targets);

struct HeadLogits {
  Eigen::VectorXd event;      // one logit per class
  Eigen::VectorXd distance;   // 21
  Eigen::VectorXd azimuth;    // 360
  Eigen::VectorXd elevation;  // 180
};

struct HeadTargets {
  Eigen::VectorXd event;  // multi-hot, same width as HeadLogits::event
  Index distance_bin = 0;
  Index azimuth_bin = 0;
  Index elevation_bin = 0;
};

struct BinauralLossTerms {
  double event = 0.0;
  double distance = 0.0;
  double doa = 0.0;  // azimuth + elevation cross-entropy
  double total = 0.0;
};

BinauralLossTerms binaural_loss_terms(const HeadLogits& logits,
                                      const HeadTargets& targets,
                                      const LossWeights& weights);

/// alpha_1 L_cls + alpha_2 L_dis + alpha_3 L_doa.
double binaural_loss(const HeadLogits& logits, const HeadTargets& targets,
                     const LossWeights& weights);

/// eta_1 * binaural + eta_2 * geo.
double total_loss(double binaural, double geo, const LossWeights& weights);

}  // namespace roomqa::acoustics
