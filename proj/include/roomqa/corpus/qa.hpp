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
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "roomqa/corpus/render.hpp"
#include "roomqa/corpus/templates.hpp"
#include "roomqa/rng.hpp"

namespace roomqa::corpus {

enum class QaType { kI = 1, kII = 2, kIII = 3, kIV = 4 };

/// "I", "II", "III", "IV".
const char* qa_type_name(QaType t);
std::optional<QaType> qa_type_from_name(std::string_view name);

/// Types I and II: the referenced source's labels and position.
struct PerceptionTruth {
  int source_index = 0;
  bool dual = false;
  std::vector<std::string> class_labels;
  geometry::DirectionLabel label;
  geometry::SphericalDoa doa;
};

/// Type III. `other` is -1 for receiver-relative relations.
struct RelationTruth {
  Relation relation = Relation::kLeft;
  int subject = 0;
  int other = -1;
  bool answer = false;
};

/// Type IV: the rationale fields (s1/s2 in template order) and the choice.
struct CotTruth {
  Axis axis = Axis::kLeftRight;
  CotVariant variant = CotVariant::kBothX;
  std::array<int, 2> source_index{0, 1};
  std::array<std::string, 2> names;
  std::array<int, 2> clock_hours{12, 12};
  std::array<geometry::Vertical, 2> verticals{geometry::Vertical::kUp,
                                              geometry::Vertical::kUp};

  bool side_x() const {
    return variant == CotVariant::kOneX || variant == CotVariant::kBothX;
  }
  bool both() const {
    return variant == CotVariant::kBothX || variant == CotVariant::kBothY;
  }
  /// Name of the single selected source; empty for the both-variants.
  std::string entity() const;
  const char* side() const { return side_name(axis, side_x()); }
};

using StructuredTruth = std::variant<PerceptionTruth, RelationTruth, CotTruth>;

struct QaPair {
  std::string qa_id;
  std::string sample_id;
  QaType type = QaType::kI;
  std::string question;
  std::string answer;
  std::string template_id;
  StructuredTruth truth;
};

/// Counts of skipped items by reason.
struct GenerationLog {
  std::map<std::string, long> skipped;
  void skip(const std::string& reason) { ++skipped[reason]; }
  void merge(const GenerationLog& other);
};

/// Source position phrase used in rationales: "eight o' clock", plus
/// ", up"/", down" on the up-down axis.
std::string cot_position(const geometry::DirectionLabel& label, Axis axis);

/// Truth of `relation` for subject `s1` (and `s2` for pairwise relations);
/// nullopt when the relation is undecidable for this geometry.
std::optional<bool> relation_truth(Relation relation, const SourceTruth& s1,
                                   const SourceTruth* s2);

/// Side of one source on an axis: +1 side X, -1 side Y, 0 neither.
int axis_side(Axis axis, const geometry::DirectionLabel& label);

struct CotOption {
  CotVariant variant;
  int s1;
  int s2;
};

/// Every (variant, s1, s2) assignment that is true for the two sources.
std::vector<CotOption> cot_options(Axis axis, const SourceTruth& a,
                                   const SourceTruth& b);

/// Type I and Type II pairs: one of each per sample.
std::vector<QaPair> gen_qa_perception(const SampleRecord& sample, Rng& rng,
                                      const TemplateBank& templates,
                                      GenerationLog* log = nullptr);

/// Every decidable Type III candidate of a dual-source sample (each relation
/// for each subject order), with its template drawn from rng. Balance with
/// balance_relational.
std::vector<QaPair> gen_qa_relational(const SampleRecord& sample, Rng& rng,
                                      const TemplateBank& templates,
                                      GenerationLog* log = nullptr);

/// At most one Type IV pair per dual-source sample.
std::vector<QaPair> gen_qa_cot(const SampleRecord& sample, Rng& rng,
                               const TemplateBank& templates,
                               GenerationLog* log = nullptr);

/// Selects an equal number of Yes and No candidates per relation, up to
/// target_total / 10 per relation, choosing by seeded keys. The output keeps
/// the input order.
std::vector<QaPair> balance_relational(const std::vector<QaPair>& candidates,
                                       std::size_t target_total,
                                       std::uint64_t seed);

/// Re-derives the pair's truth and answer from the sample's scene geometry.
/// Returns a diagnostic on mismatch.
std::optional<std::string> audit_qa_pair(const QaPair& qa,
                                         const SampleRecord& sample);

}  // namespace roomqa::corpus
