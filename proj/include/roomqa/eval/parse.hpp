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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "roomqa/corpus/qa.hpp"

namespace roomqa::eval {

struct Prediction {
  std::string qa_id;
  std::string raw_text;
  std::map<std::string, double> scores;  // optional per-class scores
};

/// Reads {qa_id, raw_text, scores?}. Throws on a malformed record.
Prediction prediction_from_json(const nlohmann::json& j);
std::vector<Prediction> read_predictions(const std::filesystem::path& path);

/// Type IV answer: cited positions and the final choice.
struct ParsedCot {
  std::vector<geometry::ParsedLabel> positions;
  bool both = false;
  std::optional<std::string> entity;
  std::optional<std::string> side;  // side_name() of the axis

  bool has_final() const { return side && (both || entity); }
};

enum class Consistency { kConsistent, kFinalOnly, kInconsistent, kUnparsed };
const char* consistency_name(Consistency c);

struct ParsedAnswer {
  corpus::QaType type = corpus::QaType::kI;
  std::vector<std::string> classes;  // I
  geometry::ParsedLabel label;       // II
  std::optional<bool> yes;           // III
  ParsedCot cot;                     // IV
  /// Fields that could not be recovered.
  std::vector<std::string> missing;
};

/// Vocabulary names found in the text (case-insensitive, whole words,
/// longest match first), in order of appearance, without repeats.
std::vector<std::string> find_class_names(std::string_view text,
                                          std::span<const std::string> names);

/// First token of the yes family (yes, yeah, yep, correct, true) or the no
/// family (no, nope, not, incorrect, false).
std::optional<bool> parse_yes_no(std::string_view text);

ParsedCot parse_cot(std::string_view text, corpus::Axis axis,
                    std::span<const std::string> entity_names);

/// Parses `p.raw_text` for the pair's type. Type I matches against
/// `vocabulary`; Type IV uses the pair's two source names and axis.
/// Never throws on content.
ParsedAnswer parse_prediction(const Prediction& p, const corpus::QaPair& qa,
                              std::span<const std::string> vocabulary);

/// Type IV audit of a parsed answer. Throws for other types.
Consistency cot_consistency(const corpus::QaPair& qa, const ParsedCot& parsed);

}  // namespace roomqa::eval
