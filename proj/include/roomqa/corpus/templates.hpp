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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace roomqa::corpus {

/// Type III relations. The first six are relative to the receiver, the rest
/// compare source 1 against source 2.
enum class Relation {
  kLeft,
  kRight,
  kFront,
  kBehind,
  kAbove,
  kBelow,
  kLeftOfOther,
  kFrontOfOther,
  kAboveOther,
  kCloserThan,
};

inline constexpr std::array<Relation, 10> kAllRelations = {
    Relation::kLeft,        Relation::kRight,        Relation::kFront,
    Relation::kBehind,      Relation::kAbove,        Relation::kBelow,
    Relation::kLeftOfOther, Relation::kFrontOfOther, Relation::kAboveOther,
    Relation::kCloserThan};

const char* relation_key(Relation r);
std::optional<Relation> relation_from_key(std::string_view key);

/// Type IV axes. Side X is left / front / up, side Y is right / behind / down.
enum class Axis { kLeftRight, kFrontBack, kUpDown };
inline constexpr std::array<Axis, 3> kAllAxes = {Axis::kLeftRight,
                                                 Axis::kFrontBack, Axis::kUpDown};

/// one_x: only s1 is on side X. one_y: only s2 is on side Y.
/// both_x / both_y: both sources on that side.
enum class CotVariant { kOneX, kOneY, kBothX, kBothY };

const char* axis_key(Axis a);
std::optional<Axis> axis_from_key(std::string_view key);
const char* variant_key(CotVariant v);
std::optional<CotVariant> variant_from_key(std::string_view key);
/// "left"/"right", "front"/"behind", "up"/"down".
const char* side_name(Axis a, bool side_x);

struct CotTemplates {
  std::vector<std::string> question_x, question_y;
  std::vector<std::string> one_x, one_y, both_x, both_y;

  const std::vector<std::string>& answers(CotVariant v) const;
};

/// Question and answer templates. Placeholders are `{name}`:
///   type1_dual  {hour} {vertical} {distance}
///   type2_dual  {cls}
///   type3       {s1} {s2}
///   type4       {s1} {s2} {s1p} {s2p}
struct TemplateBank {
  std::vector<std::string> type1_single, type1_dual;
  std::vector<std::string> type2_single, type2_dual;
  std::map<std::string, std::vector<std::string>> type3;  // by relation_key
  std::map<std::string, CotTemplates> type4;             // by axis_key

  static TemplateBank defaults();
  /// Every list non-empty, every relation and axis present, and no unknown
  /// placeholders.
  void validate() const;

  const std::vector<std::string>& relation_templates(Relation r) const;
  const CotTemplates& axis_templates(Axis a) const;
};

nlohmann::json to_json(const TemplateBank& bank);
TemplateBank template_bank_from_json(const nlohmann::json& j);
TemplateBank load_templates(const std::filesystem::path& path);
void save_templates(const std::filesystem::path& path, const TemplateBank& bank);

/// Replaces `{name}` placeholders. Throws on a placeholder missing from
/// `values`.
std::string fill_template(std::string_view tpl,
                          const std::map<std::string, std::string>& values);

/// Placeholder names used by a template, in order of appearance.
std::vector<std::string> template_placeholders(std::string_view tpl);

}  // namespace roomqa::corpus
