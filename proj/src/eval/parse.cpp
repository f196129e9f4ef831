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

#include "roomqa/eval/parse.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "roomqa/corpus/manifest.hpp"

namespace roomqa::eval {

using corpus::Axis;

Prediction prediction_from_json(const nlohmann::json& j) {
  try {
    Prediction p;
    p.qa_id = j.at("qa_id").get<std::string>();
    p.raw_text = j.at("raw_text").get<std::string>();
    if (j.contains("scores") && !j.at("scores").is_null())
      p.scores = j.at("scores").get<std::map<std::string, double>>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("prediction: ") + e.what());
  }
}

std::vector<Prediction> read_predictions(const std::filesystem::path& path) {
  std::vector<Prediction> out;
  for (const auto& j : corpus::read_jsonl(path))
    out.push_back(prediction_from_json(j));
  return out;
}

const char* consistency_name(Consistency c) {
  switch (c) {
    case Consistency::kConsistent: return "consistent";
    case Consistency::kFinalOnly: return "final_only";
    case Consistency::kInconsistent: return "inconsistent";
    case Consistency::kUnparsed: return "unparsed";
  }
  return "";
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool boundary_at(const std::string& s, std::size_t pos, std::size_t len) {
  const bool left = pos == 0 || !word_char(s[pos - 1]) || !word_char(s[pos]);
  const std::size_t end = pos + len;
  const bool right =
      end >= s.size() || !word_char(s[end]) || !word_char(s[end - 1]);
  return left && right;
}

struct Mention {
  std::size_t pos;
  std::size_t len;
  std::size_t name;
};

std::vector<Mention> mentions(const std::string& text_lc,
                              std::span<const std::string> names) {
  std::vector<std::string> lc;
  for (const auto& n : names) lc.push_back(lower(n));
  std::vector<Mention> out;
  std::size_t pos = 0;
  while (pos < text_lc.size()) {
    std::optional<Mention> best;
    for (std::size_t k = 0; k < lc.size(); ++k) {
      const auto& n = lc[k];
      if (n.empty() || text_lc.compare(pos, n.size(), n) != 0) continue;
      if (!boundary_at(text_lc, pos, n.size())) continue;
      if (!best || n.size() > best->len) best = Mention{pos, n.size(), k};
    }
    if (best) {
      out.push_back(*best);
      pos += best->len;
    } else {
      ++pos;
    }
  }
  return out;
}

const std::vector<std::pair<std::string, bool>>& side_words(Axis axis) {
  static const std::vector<std::pair<std::string, bool>> lr = {
      {"left", true}, {"right", false}};
  static const std::vector<std::pair<std::string, bool>> fb = {
      {"front", true}, {"ahead", true}, {"forward", true},
      {"behind", false}, {"back", false}, {"rear", false}};
  static const std::vector<std::pair<std::string, bool>> ud = {
      {"above", true},  {"upper", true}, {"up", true},     {"overhead", true},
      {"below", false}, {"lower", false}, {"down", false}, {"beneath", false},
      {"under", false}};
  switch (axis) {
    case Axis::kLeftRight: return lr;
    case Axis::kFrontBack: return fb;
    case Axis::kUpDown: return ud;
  }
  return lr;
}

}  // namespace

std::vector<std::string> find_class_names(std::string_view text,
                                          std::span<const std::string> names) {
  std::vector<std::string> out;
  for (const auto& m : mentions(lower(text), names)) {
    const auto& n = names[m.name];
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  return out;
}

std::optional<bool> parse_yes_no(std::string_view text) {
  static const std::regex re(
      R"(\b(yes|yeah|yep|correct|true|no|nope|not|incorrect|false)\b)",
      std::regex::icase);
  const std::string s(text);
  std::smatch m;
  if (!std::regex_search(s, m, re)) return std::nullopt;
  const auto w = lower(m.str(1));
  return w == "yes" || w == "yeah" || w == "yep" || w == "correct" ||
         w == "true";
}

ParsedCot parse_cot(std::string_view text, Axis axis,
                    std::span<const std::string> entity_names) {
  ParsedCot out;
  out.positions = geometry::find_position_mentions(text);
  std::string lc = lower(text);
  const auto ms = mentions(lc, entity_names);
  if (!ms.empty()) out.entity = entity_names[ms.back().name];
  // Class names must not be read as side words or "both".
  for (const auto& m : ms)
    std::fill(lc.begin() + static_cast<std::ptrdiff_t>(m.pos),
              lc.begin() + static_cast<std::ptrdiff_t>(m.pos + m.len), ' ');
  static const std::regex both_re(R"(\bboth\b)");
  out.both = std::regex_search(lc, both_re);

  std::optional<std::size_t> last_pos;
  for (const auto& [word, is_x] : side_words(axis)) {
    const std::regex re("\\b" + word + "\\b");
    for (auto it = std::sregex_iterator(lc.begin(), lc.end(), re);
         it != std::sregex_iterator(); ++it) {
      const auto p = static_cast<std::size_t>(it->position());
      if (!last_pos || p > *last_pos) {
        last_pos = p;
        out.side = corpus::side_name(axis, is_x);
      }
    }
  }
  return out;
}

ParsedAnswer parse_prediction(const Prediction& p, const corpus::QaPair& qa,
                              std::span<const std::string> vocabulary) {
  ParsedAnswer out;
  out.type = qa.type;
  switch (qa.type) {
    case corpus::QaType::kI:
      out.classes = find_class_names(p.raw_text, vocabulary);
      if (out.classes.empty()) out.missing.push_back("classes");
      break;
    case corpus::QaType::kII:
      out.label = geometry::parse_label(p.raw_text);
      if (!out.label.clock_hour) out.missing.push_back("clock_hour");
      if (!out.label.vertical) out.missing.push_back("vertical");
      if (!out.label.distance_bin) out.missing.push_back("distance");
      break;
    case corpus::QaType::kIII:
      out.yes = parse_yes_no(p.raw_text);
      if (!out.yes) out.missing.push_back("yes_no");
      break;
    case corpus::QaType::kIV: {
      const auto* t = std::get_if<corpus::CotTruth>(&qa.truth);
      if (!t) {
        out.missing.push_back("structured_truth");
        break;
      }
      const std::array<std::string, 2> names = t->names;
      out.cot = parse_cot(p.raw_text, t->axis, names);
      if (!out.cot.side) out.missing.push_back("side");
      if (!out.cot.both && !out.cot.entity) out.missing.push_back("entity");
      if (out.cot.positions.size() < 2) out.missing.push_back("positions");
      break;
    }
  }
  return out;
}

Consistency cot_consistency(const corpus::QaPair& qa, const ParsedCot& parsed) {
  const auto* t = std::get_if<corpus::CotTruth>(&qa.truth);
  if (qa.type != corpus::QaType::kIV || !t)
    throw Error("cot_consistency needs a Type IV pair");
  if (!parsed.has_final()) return Consistency::kUnparsed;
  const bool final_ok =
      parsed.side == std::string(t->side()) && parsed.both == t->both() &&
      (t->both() || parsed.entity == t->entity());
  if (!final_ok) return Consistency::kInconsistent;
  if (parsed.positions.size() < 2) return Consistency::kFinalOnly;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& m = parsed.positions[k];
    if (m.clock_hour != t->clock_hours[k]) return Consistency::kFinalOnly;
    if (t->axis == Axis::kUpDown && m.vertical != t->verticals[k])
      return Consistency::kFinalOnly;
  }
  return Consistency::kConsistent;
}

}  // namespace roomqa::eval
