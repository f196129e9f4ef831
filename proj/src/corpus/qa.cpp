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

#include "roomqa/corpus/qa.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace roomqa::corpus {

using geometry::DirectionLabel;
using geometry::Quadrant;
using geometry::Vertical;

const char* qa_type_name(QaType t) {
  switch (t) {
    case QaType::kI: return "I";
    case QaType::kII: return "II";
    case QaType::kIII: return "III";
    case QaType::kIV: return "IV";
  }
  return "";
}

std::optional<QaType> qa_type_from_name(std::string_view name) {
  for (auto t : {QaType::kI, QaType::kII, QaType::kIII, QaType::kIV})
    if (name == qa_type_name(t)) return t;
  return std::nullopt;
}

std::string CotTruth::entity() const {
  switch (variant) {
    case CotVariant::kOneX: return names[0];
    case CotVariant::kOneY: return names[1];
    default: return {};
  }
}

void GenerationLog::merge(const GenerationLog& other) {
  for (const auto& [k, v] : other.skipped) skipped[k] += v;
}

std::string cot_position(const DirectionLabel& label, Axis axis) {
  std::string s = geometry::clock_phrase(label.clock_hour, true);
  if (axis == Axis::kUpDown)
    s += std::string(", ") + geometry::vertical_name(label.vertical);
  return s;
}

namespace {

double lateral(int hour) { return std::sin(deg2rad(30.0 * hour)); }
double frontal(int hour) { return std::cos(deg2rad(30.0 * hour)); }

std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& l : labels) out += (out.empty() ? "" : "; ") + l;
  return out;
}

std::string format_distance(double m) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.1f", m);
  return buf;
}

template <typename T>
const T& pick(const std::vector<T>& v, Rng& rng, std::size_t* index) {
  *index = static_cast<std::size_t>(rng.below(v.size()));
  return v[*index];
}

std::string make_id(const std::string& sample_id, QaType t, int n) {
  return sample_id + "-" + qa_type_name(t) + "-" + std::to_string(n);
}

void note(GenerationLog* log, const std::string& reason) {
  if (log) log->skip(reason);
}

bool distinct_names(const SampleRecord& s) {
  return s.sources.size() == 2 &&
         s.sources[0].display_name() != s.sources[1].display_name();
}

PerceptionTruth perception_truth(const SampleRecord& s, int idx) {
  const auto& src = s.sources[static_cast<std::size_t>(idx)];
  return {idx, s.sources.size() == 2, src.class_labels, src.label, src.doa};
}

}  // namespace

std::optional<bool> relation_truth(Relation relation, const SourceTruth& s1,
                                   const SourceTruth* s2) {
  const int h1 = s1.label.clock_hour;
  const Quadrant q1 = geometry::quadrant(h1);
  switch (relation) {
    case Relation::kLeft:
    case Relation::kRight:
      if (h1 == 12 || h1 == 6) return std::nullopt;
      return q1 == (relation == Relation::kLeft ? Quadrant::kLeft
                                                : Quadrant::kRight);
    case Relation::kFront: return q1 == Quadrant::kFront;
    case Relation::kBehind: return q1 == Quadrant::kBehind;
    case Relation::kAbove: return s1.label.vertical == Vertical::kUp;
    case Relation::kBelow: return s1.label.vertical == Vertical::kDown;
    default: break;
  }
  if (s2 == nullptr) throw Error("pairwise relation needs two sources");
  const int h2 = s2->label.clock_hour;
  switch (relation) {
    case Relation::kLeftOfOther: {
      const double d = lateral(h2) - lateral(h1);
      if (std::abs(d) < 1e-9) return std::nullopt;
      return d > 0.0;
    }
    case Relation::kFrontOfOther: {
      const double d = frontal(h1) - frontal(h2);
      if (std::abs(d) < 1e-9) return std::nullopt;
      return d > 0.0;
    }
    case Relation::kAboveOther:
      if (s1.label.vertical == s2->label.vertical) return std::nullopt;
      return s1.label.vertical == Vertical::kUp;
    case Relation::kCloserThan: {
      const double d = s2->doa.distance_m - s1.doa.distance_m;
      if (std::abs(d) < 0.01) return std::nullopt;
      return d > 0.0;
    }
    default: break;
  }
  return std::nullopt;
}

int axis_side(Axis axis, const DirectionLabel& label) {
  const Quadrant q = geometry::quadrant(label.clock_hour);
  switch (axis) {
    case Axis::kLeftRight:
      return q == Quadrant::kLeft ? 1 : q == Quadrant::kRight ? -1 : 0;
    case Axis::kFrontBack:
      return q == Quadrant::kFront ? 1 : q == Quadrant::kBehind ? -1 : 0;
    case Axis::kUpDown: return label.vertical == Vertical::kUp ? 1 : -1;
  }
  return 0;
}

std::vector<CotOption> cot_options(Axis axis, const SourceTruth& a,
                                   const SourceTruth& b) {
  const std::array<int, 2> side = {axis_side(axis, a.label),
                                   axis_side(axis, b.label)};
  std::vector<CotOption> out;
  if (side[0] == 1 && side[1] == 1) {
    out.push_back({CotVariant::kBothX, 0, 1});
    out.push_back({CotVariant::kBothX, 1, 0});
  } else if (side[0] == -1 && side[1] == -1) {
    out.push_back({CotVariant::kBothY, 0, 1});
    out.push_back({CotVariant::kBothY, 1, 0});
  } else {
    for (int i = 0; i < 2; ++i) {
      if (side[i] == 1) out.push_back({CotVariant::kOneX, i, 1 - i});
      if (side[i] == -1) out.push_back({CotVariant::kOneY, 1 - i, i});
    }
  }
  return out;
}

std::vector<QaPair> gen_qa_perception(const SampleRecord& sample, Rng& rng,
                                      const TemplateBank& templates,
                                      GenerationLog* log) {
  std::vector<QaPair> out;
  const auto n = sample.sources.size();
  if (n == 1) {
    const auto& src = sample.sources.front();
    std::size_t k = 0;
    QaPair q1;
    q1.qa_id = make_id(sample.sample_id, QaType::kI, 0);
    q1.sample_id = sample.sample_id;
    q1.type = QaType::kI;
    q1.question = pick(templates.type1_single, rng, &k);
    q1.template_id = "type1_single/" + std::to_string(k);
    q1.answer = join_labels(src.class_labels);
    q1.truth = perception_truth(sample, 0);
    out.push_back(std::move(q1));

    QaPair q2;
    q2.qa_id = make_id(sample.sample_id, QaType::kII, 0);
    q2.sample_id = sample.sample_id;
    q2.type = QaType::kII;
    q2.question = pick(templates.type2_single, rng, &k);
    q2.template_id = "type2_single/" + std::to_string(k);
    q2.answer = geometry::format_label(src.label);
    q2.truth = perception_truth(sample, 0);
    out.push_back(std::move(q2));
    return out;
  }
  if (n != 2) throw Error("sample must have 1 or 2 sources");
  if (!distinct_names(sample)) {
    note(log, "perception: identical class labels");
    return out;
  }

  const int i1 = static_cast<int>(rng.below(2));
  const auto& a = sample.sources[static_cast<std::size_t>(i1)];
  const auto& b = sample.sources[static_cast<std::size_t>(1 - i1)];
  std::size_t k = 0;
  if (a.label == b.label) {
    note(log, "type I: both sources share a position label");
  } else {
    const auto& tpl = pick(templates.type1_dual, rng, &k);
    QaPair q;
    q.qa_id = make_id(sample.sample_id, QaType::kI, 0);
    q.sample_id = sample.sample_id;
    q.type = QaType::kI;
    q.question = fill_template(
        tpl, {{"hour", geometry::clock_phrase(a.label.clock_hour)},
              {"vertical", geometry::vertical_name(a.label.vertical)},
              {"distance", format_distance(a.label.distance_m())}});
    q.template_id = "type1_dual/" + std::to_string(k);
    q.answer = join_labels(a.class_labels);
    q.truth = perception_truth(sample, i1);
    out.push_back(std::move(q));
  }

  const int i2 = static_cast<int>(rng.below(2));
  const auto& c = sample.sources[static_cast<std::size_t>(i2)];
  const auto& tpl = pick(templates.type2_dual, rng, &k);
  QaPair q;
  q.qa_id = make_id(sample.sample_id, QaType::kII, 0);
  q.sample_id = sample.sample_id;
  q.type = QaType::kII;
  q.question = fill_template(tpl, {{"cls", c.display_name()}});
  q.template_id = "type2_dual/" + std::to_string(k);
  q.answer = geometry::format_label(c.label);
  q.truth = perception_truth(sample, i2);
  out.push_back(std::move(q));
  return out;
}

std::vector<QaPair> gen_qa_relational(const SampleRecord& sample, Rng& rng,
                                      const TemplateBank& templates,
                                      GenerationLog* log) {
  std::vector<QaPair> out;
  if (sample.sources.size() != 2) return out;
  if (!distinct_names(sample)) {
    note(log, "type III: identical class labels");
    return out;
  }
  int n = 0;
  for (Relation r : kAllRelations) {
    const bool pairwise =
        static_cast<int>(r) >= static_cast<int>(Relation::kLeftOfOther);
    for (int s = 0; s < 2; ++s) {
      const auto& s1 = sample.sources[static_cast<std::size_t>(s)];
      const auto& s2 = sample.sources[static_cast<std::size_t>(1 - s)];
      const auto truth = relation_truth(r, s1, pairwise ? &s2 : nullptr);
      if (!truth) {
        note(log, std::string("type III: undecidable ") + relation_key(r));
        continue;
      }
      std::size_t k = 0;
      const auto& tpl = pick(templates.relation_templates(r), rng, &k);
      QaPair q;
      q.qa_id = make_id(sample.sample_id, QaType::kIII, n++);
      q.sample_id = sample.sample_id;
      q.type = QaType::kIII;
      q.question = fill_template(
          tpl, {{"s1", s1.display_name()}, {"s2", s2.display_name()}});
      q.template_id =
          std::string("type3/") + relation_key(r) + "/" + std::to_string(k);
      q.answer = *truth ? "Yes" : "No";
      q.truth = RelationTruth{r, s, pairwise ? 1 - s : -1, *truth};
      out.push_back(std::move(q));
    }
  }
  return out;
}

std::vector<QaPair> gen_qa_cot(const SampleRecord& sample, Rng& rng,
                               const TemplateBank& templates,
                               GenerationLog* log) {
  std::vector<QaPair> out;
  if (sample.sources.size() != 2) return out;
  if (!distinct_names(sample)) {
    note(log, "type IV: identical class labels");
    return out;
  }
  std::vector<std::pair<Axis, CotOption>> options;
  for (Axis a : kAllAxes)
    for (const auto& o : cot_options(a, sample.sources[0], sample.sources[1]))
      options.emplace_back(a, o);
  if (options.empty()) {
    note(log, "type IV: no decidable axis");
    return out;
  }
  // Draw the axis first so axes with more orderings are not favoured.
  std::vector<Axis> axes;
  for (const auto& [a, o] : options)
    if (axes.empty() || axes.back() != a) axes.push_back(a);
  const Axis axis = axes[static_cast<std::size_t>(rng.below(axes.size()))];
  std::vector<CotOption> mine;
  for (const auto& [a, o] : options)
    if (a == axis) mine.push_back(o);
  const CotOption opt = mine[static_cast<std::size_t>(rng.below(mine.size()))];

  const auto& src1 = sample.sources[static_cast<std::size_t>(opt.s1)];
  const auto& src2 = sample.sources[static_cast<std::size_t>(opt.s2)];
  CotTruth t;
  t.axis = axis;
  t.variant = opt.variant;
  t.source_index = {opt.s1, opt.s2};
  t.names = {src1.display_name(), src2.display_name()};
  t.clock_hours = {src1.label.clock_hour, src2.label.clock_hour};
  t.verticals = {src1.label.vertical, src2.label.vertical};

  const auto& bank = templates.axis_templates(axis);
  std::size_t kq = 0, ka = 0;
  const auto& question =
      pick(t.side_x() ? bank.question_x : bank.question_y, rng, &kq);
  const auto& answer = pick(bank.answers(opt.variant), rng, &ka);

  QaPair q;
  q.qa_id = make_id(sample.sample_id, QaType::kIV, 0);
  q.sample_id = sample.sample_id;
  q.type = QaType::kIV;
  q.question = question;
  q.answer = fill_template(answer, {{"s1", t.names[0]},
                                    {"s2", t.names[1]},
                                    {"s1p", cot_position(src1.label, axis)},
                                    {"s2p", cot_position(src2.label, axis)}});
  q.template_id = std::string("type4/") + axis_key(axis) + "/" +
                  variant_key(opt.variant) + "/" + std::to_string(ka) + "/q" +
                  std::to_string(kq);
  q.truth = t;
  out.push_back(std::move(q));
  return out;
}

std::vector<QaPair> balance_relational(const std::vector<QaPair>& candidates,
                                       std::size_t target_total,
                                       std::uint64_t seed) {
  const std::size_t n_rel = kAllRelations.size();
  // yes/no candidate indices per relation
  std::vector<std::array<std::vector<std::size_t>, 2>> pools(n_rel);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto* t = std::get_if<RelationTruth>(&candidates[i].truth);
    if (!t) throw Error("balance_relational expects Type III pairs");
    pools[static_cast<std::size_t>(t->relation)][t->answer ? 1 : 0].push_back(i);
  }
  auto key = [&](std::size_t i) {
    // FNV-1a keeps the order portable across standard libraries.
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : candidates[i].qa_id) h = (h ^ c) * 0x100000001b3ull;
    return Rng::derive(seed, h, 3);
  };
  std::vector<char> keep(candidates.size(), 0);
  for (std::size_t r = 0; r < n_rel; ++r) {
    const std::size_t quota = target_total / n_rel + (r < target_total % n_rel);
    const std::size_t per_answer =
        std::min({quota / 2, pools[r][0].size(), pools[r][1].size()});
    for (auto& pool : pools[r]) {
      std::vector<std::pair<std::uint64_t, std::size_t>> keyed;
      for (auto i : pool) keyed.emplace_back(key(i), i);
      std::sort(keyed.begin(), keyed.end());
      for (std::size_t j = 0; j < per_answer; ++j) keep[keyed[j].second] = 1;
    }
  }
  std::vector<QaPair> out;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (keep[i]) out.push_back(candidates[i]);
  return out;
}

namespace {

std::string mismatch(const QaPair& qa, const std::string& what) {
  return qa.qa_id + ": " + what;
}

bool same_doa(const geometry::SphericalDoa& a, const geometry::SphericalDoa& b) {
  return std::abs(a.azimuth_deg - b.azimuth_deg) < 1e-9 &&
         std::abs(a.elevation_deg - b.elevation_deg) < 1e-9 &&
         std::abs(a.distance_m - b.distance_m) < 1e-9;
}

}  // namespace

std::optional<std::string> audit_qa_pair(const QaPair& qa,
                                         const SampleRecord& sample) {
  if (qa.sample_id != sample.sample_id) return mismatch(qa, "sample_id");
  std::vector<SourceTruth> geo;
  try {
    geo = derive_truth(sample.scene);
  } catch (const Error& e) {
    return mismatch(qa, e.what());
  }
  const auto source = [&](int i) -> const SourceTruth* {
    if (i < 0 || static_cast<std::size_t>(i) >= geo.size()) return nullptr;
    return &geo[static_cast<std::size_t>(i)];
  };

  if (const auto* t = std::get_if<PerceptionTruth>(&qa.truth)) {
    if (qa.type != QaType::kI && qa.type != QaType::kII)
      return mismatch(qa, "truth type");
    const auto* s = source(t->source_index);
    if (!s) return mismatch(qa, "source index");
    if (t->dual != (geo.size() == 2)) return mismatch(qa, "source count");
    if (t->class_labels != s->class_labels) return mismatch(qa, "labels");
    if (!(t->label == s->label)) return mismatch(qa, "direction label");
    if (!same_doa(t->doa, s->doa)) return mismatch(qa, "doa");
    const std::string expected = qa.type == QaType::kI
                                     ? join_labels(s->class_labels)
                                     : geometry::format_label(s->label);
    if (qa.answer != expected) return mismatch(qa, "answer text");
    return std::nullopt;
  }
  if (const auto* t = std::get_if<RelationTruth>(&qa.truth)) {
    if (qa.type != QaType::kIII) return mismatch(qa, "truth type");
    const auto* s1 = source(t->subject);
    const auto* s2 = t->other < 0 ? nullptr : source(t->other);
    if (!s1 || (t->other >= 0 && !s2)) return mismatch(qa, "source index");
    const auto v = relation_truth(t->relation, *s1, s2);
    if (!v) return mismatch(qa, "relation undecidable");
    if (*v != t->answer) return mismatch(qa, "relation answer");
    if (qa.answer != (*v ? "Yes" : "No")) return mismatch(qa, "answer text");
    return std::nullopt;
  }
  const auto& t = std::get<CotTruth>(qa.truth);
  if (qa.type != QaType::kIV) return mismatch(qa, "truth type");
  if (geo.size() != 2) return mismatch(qa, "source count");
  const auto opts = cot_options(t.axis, geo[0], geo[1]);
  const bool valid = std::any_of(opts.begin(), opts.end(), [&](const auto& o) {
    return o.variant == t.variant && o.s1 == t.source_index[0] &&
           o.s2 == t.source_index[1];
  });
  if (!valid) return mismatch(qa, "variant does not match geometry");
  for (int k = 0; k < 2; ++k) {
    const auto* s = source(t.source_index[static_cast<std::size_t>(k)]);
    if (t.names[static_cast<std::size_t>(k)] != s->display_name())
      return mismatch(qa, "rationale name");
    if (t.clock_hours[static_cast<std::size_t>(k)] != s->label.clock_hour)
      return mismatch(qa, "rationale clock hour");
    if (t.verticals[static_cast<std::size_t>(k)] != s->label.vertical)
      return mismatch(qa, "rationale vertical");
  }
  const auto mentions = geometry::find_position_mentions(qa.answer);
  if (mentions.size() != 2) return mismatch(qa, "rationale positions");
  for (int k = 0; k < 2; ++k) {
    const auto& m = mentions[static_cast<std::size_t>(k)];
    if (m.clock_hour != t.clock_hours[static_cast<std::size_t>(k)])
      return mismatch(qa, "rationale text hour");
    if (t.axis == Axis::kUpDown &&
        m.vertical != t.verticals[static_cast<std::size_t>(k)])
      return mismatch(qa, "rationale text vertical");
  }
  return std::nullopt;
}

}  // namespace roomqa::corpus
