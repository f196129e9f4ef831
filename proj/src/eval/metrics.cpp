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

#include "roomqa/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <vector>

namespace roomqa::eval {

namespace {

void require_paired(std::size_t a, std::size_t b) {
  if (a != b) throw Error("prediction and reference counts differ");
  if (a == 0) throw Error("empty set");
}

}  // namespace

double average_precision(std::span<const double> scores,
                         std::span<const bool> truth) {
  if (scores.size() != truth.size())
    throw Error("prediction and reference counts differ");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    if (truth[a] != truth[b]) return !truth[a];
    return a < b;
  });
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (!truth[order[r]]) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(r + 1);
  }
  if (hits == 0) throw Error("no positives");
  return sum / static_cast<double>(hits);
}

MapResult mean_average_precision(
    const Eigen::MatrixXd& scores,
    const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>& truth) {
  if (scores.rows() != truth.rows() || scores.cols() != truth.cols())
    throw Error("score and truth shapes differ");
  MapResult out;
  double sum = 0.0;
  for (Index c = 0; c < scores.cols(); ++c) {
    if (!truth.col(c).any()) {
      ++out.n_excluded;
      continue;
    }
    const Eigen::VectorXd s = scores.col(c);
    const auto n = static_cast<std::size_t>(truth.rows());
    std::unique_ptr<bool[]> flags(new bool[n]);
    for (std::size_t i = 0; i < n; ++i) flags[i] = truth(static_cast<Index>(i), c);
    sum += average_precision({s.data(), n}, {flags.get(), n});
    ++out.n_classes;
  }
  if (out.n_classes == 0) throw Error("no positives");
  out.map = sum / static_cast<double>(out.n_classes);
  return out;
}

DoaErrorMetrics doa_error_metrics(
    std::span<const std::optional<geometry::SphericalDoa>> preds,
    std::span<const geometry::SphericalDoa> refs) {
  require_paired(preds.size(), refs.size());
  DoaErrorMetrics m;
  m.n = preds.size();
  double sum = 0.0;
  std::size_t over = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const double e =
        preds[i] ? geometry::angular_error(*preds[i], refs[i]) : 180.0;
    sum += e;
    over += e > kErThresholdDeg;
  }
  m.mae_deg = sum / static_cast<double>(m.n);
  m.er20 = static_cast<double>(over) / static_cast<double>(m.n);
  return m;
}

double distance_error_rate(std::span<const std::optional<double>> preds,
                           std::span<const double> refs) {
  require_paired(preds.size(), refs.size());
  std::size_t bad = 0;
  for (std::size_t i = 0; i < preds.size(); ++i)
    bad += !preds[i] || std::abs(*preds[i] - refs[i]) > kDistanceThresholdM;
  return static_cast<double>(bad) / static_cast<double>(preds.size());
}

double binary_accuracy(std::span<const std::optional<bool>> preds,
                       std::span<const bool> refs) {
  require_paired(preds.size(), refs.size());
  std::size_t ok = 0;
  for (std::size_t i = 0; i < preds.size(); ++i)
    ok += preds[i] && *preds[i] == refs[i];
  return static_cast<double>(ok) / static_cast<double>(preds.size());
}

double sector_accuracy(std::span<const std::optional<int>> pred_hours,
                       std::span<const int> ref_hours,
                       SectorProtocol protocol) {
  require_paired(pred_hours.size(), ref_hours.size());
  std::size_t ok = 0;
  for (std::size_t i = 0; i < pred_hours.size(); ++i) {
    const auto& p = pred_hours[i];
    if (!p || *p < 1 || *p > 12) continue;
    ok += protocol == SectorProtocol::k12Bin
              ? *p == ref_hours[i]
              : geometry::quadrant(*p) == geometry::quadrant(ref_hours[i]);
  }
  return static_cast<double>(ok) / static_cast<double>(pred_hours.size());
}

geometry::SphericalDoa sector_center(int clock_hour, geometry::Vertical v) {
  return {std::fmod(30.0 * clock_hour, 360.0),
          v == geometry::Vertical::kUp ? 45.0 : 135.0, 1.0};
}

}  // namespace roomqa::eval
