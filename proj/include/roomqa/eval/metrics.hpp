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

#include <optional>
#include <span>

#include <Eigen/Dense>

#include "roomqa/geometry/labels.hpp"

namespace roomqa::eval {

/// Non-interpolated AP: mean over positives of the precision at each
/// positive's rank. Tied scores rank negatives first. Throws "no positives".
double average_precision(std::span<const double> scores,
                         std::span<const bool> truth);

struct MapResult {
  double map = 0.0;
  std::size_t n_classes = 0;   // classes averaged
  std::size_t n_excluded = 0;  // classes without positives
};

/// scores and truth are items x classes. Classes without positives are
/// excluded; throws "no positives" when none remain.
MapResult mean_average_precision(
    const Eigen::MatrixXd& scores,
    const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>& truth);

struct DoaErrorMetrics {
  double mae_deg = 0.0;
  double er20 = 0.0;
  std::size_t n = 0;
};

inline constexpr double kErThresholdDeg = 20.0;
inline constexpr double kDistanceThresholdM = 0.5;

/// Mean angular error and fraction strictly above 20 degrees. A missing
/// prediction counts as 180 degrees.
DoaErrorMetrics doa_error_metrics(
    std::span<const std::optional<geometry::SphericalDoa>> preds,
    std::span<const geometry::SphericalDoa> refs);

/// Fraction with |pred - ref| strictly above 0.5 m; missing counts as error.
double distance_error_rate(std::span<const std::optional<double>> preds,
                           std::span<const double> refs);

/// Exact-match rate; missing counts as a mismatch.
double binary_accuracy(std::span<const std::optional<bool>> preds,
                       std::span<const bool> refs);

enum class SectorProtocol { k12Bin, k4Bin };

/// Clock-hour match rate, optionally collapsed to front/right/behind/left.
double sector_accuracy(std::span<const std::optional<int>> pred_hours,
                       std::span<const int> ref_hours, SectorProtocol protocol);

/// Direction at the centre of a clock sector: azimuth 30 * hour, elevation
/// 45 (up) or 135 (down).
geometry::SphericalDoa sector_center(int clock_hour, geometry::Vertical v);

}  // namespace roomqa::eval
