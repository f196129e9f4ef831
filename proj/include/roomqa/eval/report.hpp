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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "roomqa/eval/metrics.hpp"
#include "roomqa/eval/parse.hpp"

namespace roomqa::eval {

struct Metric {
  double value = 0.0;
  std::size_t n = 0;
};

struct TypeBreakdown {
  std::size_t n = 0;
  std::size_t fully_parsed = 0;
  std::size_t correct = 0;  // exact set / label / yes-no / final choice
};

struct MetricsReport {
  std::optional<Metric> map, mae_deg, er20, der, ba, sector_acc_12,
      sector_acc_4, cot_final_acc;
  std::size_t map_excluded_classes = 0;
  std::map<std::string, std::size_t> cot_consistency;
  std::map<std::string, TypeBreakdown> per_type;  // keyed by qa_type name
  std::size_t n_predictions = 0;
  std::size_t n_graded = 0;
  std::size_t n_unresolved = 0;
  std::size_t n_duplicates = 0;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
  /// Aligned plain-text table.
  std::string to_table() const;
};

struct GradeOptions {
  bool sector_12 = true;
  bool sector_4 = true;
};

/// Grades predictions against the QA corpus. Throws "no records" on an
/// empty prediction list and "no gradable records" when none resolve.
MetricsReport grade(const std::vector<corpus::QaPair>& qa,
                    const std::vector<Prediction>& predictions,
                    const GradeOptions& options = {});

/// Writes `<stem>.json` and `<stem>.txt`.
void write_report(const std::filesystem::path& stem, const MetricsReport& r);

}  // namespace roomqa::eval
