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

#include "roomqa/acoustics/losses.hpp"

#include <cmath>

#include "roomqa/acoustics/edc.hpp"

namespace roomqa::acoustics {

namespace {

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

void require_same_shape(const SampleMatrix<double>& a,
                        const SampleMatrix<double>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.size() == 0)
    throw Error("shape mismatch");
}

double log_sum_exp(const Eigen::VectorXd& v) {
  const double m = v.maxCoeff();
  return m + std::log((v.array() - m).exp().sum());
}

}  // namespace

void LossWeights::validate() const {
  for (double a : alpha)
    if (!(a >= 0)) throw Error("alpha weights must be nonnegative");
  for (double e : eta)
    if (!(e >= 0)) throw Error("eta weights must be nonnegative");
  if (!(lambda_edc >= 0)) throw Error("lambda_edc must be nonnegative");
  if (eta[0] == 0 && eta[1] == 0)
    throw Error("at least one eta weight must be positive");
}

double edc_loss(const Signal<double>& pred_edc, const Signal<double>& ref_edc,
                double eps) {
  if (pred_edc.size() != ref_edc.size() || pred_edc.size() == 0)
    throw Error("length mismatch");
  if (!(eps > 0)) throw Error("eps must be positive");
  const Signal<double> diff =
      10.0 * ((pred_edc + eps).log10() - (ref_edc + eps).log10());
  return diff.abs().mean();
}

double geo_loss(const SampleMatrix<double>& pred,
                const SampleMatrix<double>& ref, double lambda_edc,
                double eps) {
  require_same_shape(pred, ref);
  const double l1 = (pred - ref).abs().mean();
  if (lambda_edc == 0.0) return l1;
  double edc = 0.0;
  for (Index c = 0; c < pred.rows(); ++c)
    edc += edc_loss(backward_energy_integral(pred.row(c)),
                    backward_energy_integral(ref.row(c)), eps);
  return l1 + lambda_edc * edc / static_cast<double>(pred.rows());
}

double geo_loss(const BinauralRir& pred, const BinauralRir& ref,
                double lambda_edc) {
  return geo_loss(pred.taps, ref.taps, lambda_edc);
}

SampleMatrix<double> geo_loss_grad(const SampleMatrix<double>& pred,
                                   const SampleMatrix<double>& ref,
                                   double lambda_edc, double eps) {
  require_same_shape(pred, ref);
  const Index channels = pred.rows();
  const Index taps = pred.cols();
  const double n = static_cast<double>(pred.size());

  SampleMatrix<double> grad = (pred - ref).unaryExpr(&sgn) / n;
  if (lambda_edc == 0.0) return grad;

  // d|D_t|/dP_t, accumulated forward: P_t depends on every tau >= t.
  const double scale = lambda_edc / static_cast<double>(channels);
  const double db_per_ln = 10.0 / std::log(10.0);
  for (Index c = 0; c < channels; ++c) {
    const Signal<double> p = backward_energy_integral(pred.row(c));
    const Signal<double> r = backward_energy_integral(ref.row(c));
    double acc = 0.0;
    for (Index t = 0; t < taps; ++t) {
      const double d = db_per_ln * (std::log(p[t] + eps) - std::log(r[t] + eps));
      acc += sgn(d) * db_per_ln / (p[t] + eps) / static_cast<double>(taps);
      grad(c, t) += scale * 2.0 * pred(c, t) * acc;
    }
  }
  return grad;
}

SampleMatrix<double> geo_loss_grad(const BinauralRir& pred,
                                   const BinauralRir& ref, double lambda_edc) {
  return geo_loss_grad(pred.taps, ref.taps, lambda_edc);
}

double softmax_cross_entropy(const Eigen::VectorXd& logits, Index target) {
  if (logits.size() == 0) throw Error("empty logits");
  if (target < 0 || target >= logits.size())
    throw Error("target index out of range");
  return log_sum_exp(logits) - logits[target];
}

double mean_binary_cross_entropy(const Eigen::VectorXd& logits,
                                 const Eigen::VectorXd& targets) {
  if (logits.size() == 0 || logits.size() != targets.size())
    throw Error("event target width mismatch");
  double sum = 0.0;
  for (Index i = 0; i < logits.size(); ++i) {
    const double x = logits[i], y = targets[i];
    if (!(y >= 0.0 && y <= 1.0)) throw Error("event target out of range");
    sum += std::max(x, 0.0) - x * y + std::log1p(std::exp(-std::abs(x)));
  }
  return sum / static_cast<double>(logits.size());
}

BinauralLossTerms binaural_loss_terms(const HeadLogits& logits,
                                      const HeadTargets& targets,
                                      const LossWeights& weights) {
  if (logits.distance.size() != kDistanceBins ||
      logits.azimuth.size() != kAzimuthBins ||
      logits.elevation.size() != kElevationBins)
    throw Error("head width mismatch");
  BinauralLossTerms t;
  t.event = mean_binary_cross_entropy(logits.event, targets.event);
  t.distance = softmax_cross_entropy(logits.distance, targets.distance_bin);
  t.doa = softmax_cross_entropy(logits.azimuth, targets.azimuth_bin) +
          softmax_cross_entropy(logits.elevation, targets.elevation_bin);
  t.total = weights.alpha[0] * t.event + weights.alpha[1] * t.distance +
            weights.alpha[2] * t.doa;
  return t;
}

double binaural_loss(const HeadLogits& logits, const HeadTargets& targets,
                     const LossWeights& weights) {
  return binaural_loss_terms(logits, targets, weights).total;
}

double total_loss(double binaural, double geo, const LossWeights& weights) {
  return weights.eta[0] * binaural + weights.eta[1] * geo;
}

}  // namespace roomqa::acoustics
