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

#include "roomqa/corpus/templates.hpp"

#include <fstream>
#include <set>

#include "roomqa/common.hpp"

namespace roomqa::corpus {

using nlohmann::json;

const char* relation_key(Relation r) {
  switch (r) {
    case Relation::kLeft: return "left";
    case Relation::kRight: return "right";
    case Relation::kFront: return "front";
    case Relation::kBehind: return "behind";
    case Relation::kAbove: return "above";
    case Relation::kBelow: return "below";
    case Relation::kLeftOfOther: return "left_of_other";
    case Relation::kFrontOfOther: return "front_of_other";
    case Relation::kAboveOther: return "above_other";
    case Relation::kCloserThan: return "closer_than";
  }
  return "";
}

std::optional<Relation> relation_from_key(std::string_view key) {
  for (Relation r : kAllRelations)
    if (key == relation_key(r)) return r;
  return std::nullopt;
}

const char* axis_key(Axis a) {
  switch (a) {
    case Axis::kLeftRight: return "left_right";
    case Axis::kFrontBack: return "front_back";
    case Axis::kUpDown: return "up_down";
  }
  return "";
}

std::optional<Axis> axis_from_key(std::string_view key) {
  for (Axis a : kAllAxes)
    if (key == axis_key(a)) return a;
  return std::nullopt;
}

const char* variant_key(CotVariant v) {
  switch (v) {
    case CotVariant::kOneX: return "one_x";
    case CotVariant::kOneY: return "one_y";
    case CotVariant::kBothX: return "both_x";
    case CotVariant::kBothY: return "both_y";
  }
  return "";
}

std::optional<CotVariant> variant_from_key(std::string_view key) {
  for (auto v : {CotVariant::kOneX, CotVariant::kOneY, CotVariant::kBothX,
                 CotVariant::kBothY})
    if (key == variant_key(v)) return v;
  return std::nullopt;
}

const char* side_name(Axis a, bool side_x) {
  switch (a) {
    case Axis::kLeftRight: return side_x ? "left" : "right";
    case Axis::kFrontBack: return side_x ? "front" : "behind";
    case Axis::kUpDown: return side_x ? "up" : "down";
  }
  return "";
}

const std::vector<std::string>& CotTemplates::answers(CotVariant v) const {
  switch (v) {
    case CotVariant::kOneX: return one_x;
    case CotVariant::kOneY: return one_y;
    case CotVariant::kBothX: return both_x;
    case CotVariant::kBothY: return both_y;
  }
  return one_x;
}

TemplateBank TemplateBank::defaults() {
  TemplateBank b;
  b.type1_single = {
      "Can you tell me what kind of sounds are in this recording?",
      "What categories of sounds are present here?",
      "Could you list the types of sounds captured in this audio?",
      "Which sound events are audible in this clip?",
      "Please identify all the distinct sounds in this recording.",
      "Can you break down the audio into individual sound events?",
  };
  b.type1_dual = {
      "Can you categorize the sounds in the audio that are located to the "
      "{hour}, {vertical}, at an estimated distance of {distance} meters?",
      "Determine the types of sounds present in the audio clip from "
      "directions to the {hour}, {vertical}, approximately {distance} meters "
      "distant.",
      "Enumerate the sound occurrences in the audio clip that are sourced "
      "from the {hour}, {vertical}, around {distance} meters away.",
      "Point out the sound sources heard from {hour}, {vertical} at an "
      "approximate distance of {distance} meters.",
      "Can you pick out the sound events originating from {hour}, {vertical} "
      "approximately {distance} meters away?",
      "What sound sources can be identified from {hour}, {vertical} roughly "
      "{distance} meters distant?",
      "Identify the sound events in the audio clip coming from the {hour}, "
      "{vertical}, approximately {distance} meters away.",
  };
  b.type2_single = {
      "Where is this sound coming from, and how far away is it?",
      "What's the spatial origin of this sound clip?",
      "Where do you think this audio clip originates?",
      "Could you pinpoint the direction and distance of the sound source?",
      "In which direction and at what distance is the sound source located?",
      "Which way and how far off is this sound's origin?",
  };
  b.type2_dual = {
      "At what distance and in which direction, is the {cls} sound "
      "originating?",
      "At what spot is the sound of the {cls} audible?",
      "Where, in terms of direction and distance, can the sound of the {cls} "
      "be located?",
      "Can you estimate the bearing and distance of the {cls}'s sound source?",
      "How would you locate the {cls}'s sound in terms of both distance and "
      "direction from you?",
      "What is the direction and range of the {cls}'s sound origin?",
      "From which direction and at what distance can the sound of the {cls} "
      "be detected?",
      "Which way and how far off is the {cls} sound's origin?",
  };
  b.type3 = {
      {"left",
       {"Are the sounds of {s1} coming from the left of you?",
        "Is the {s1} sound located on your left?",
        "Does the sound of {s1} reach you from the left side?"}},
      {"right",
       {"Are the sounds of {s1} coming from the right of you?",
        "Is the {s1} sound located on your right?",
        "Does the sound of {s1} reach you from the right side?"}},
      {"front",
       {"Is the sound of {s1} coming from in front of you?",
        "Are the sounds of {s1} coming from ahead of you?"}},
      {"behind",
       {"Are the sounds of {s1} coming from your back?",
        "Is the {s1} sound originating from behind you?"}},
      {"above",
       {"Is the sound of {s1} coming from overhead?",
        "Are the sounds of {s1} coming from above you?"}},
      {"below",
       {"Is the sound of {s1} coming from below you?",
        "Are the sounds of {s1} originating beneath you?"}},
      {"left_of_other",
       {"Are the sounds of {s1} coming from the left of the sound of {s2}?",
        "Is the {s1} sound further to the left than the {s2} sound?"}},
      {"front_of_other",
       {"Is the sound of {s1} located in front compared to {s2}?",
        "Is the {s1} sound further ahead than the {s2} sound?"}},
      {"above_other",
       {"Is the sound of {s1} originating from above in relation to {s2}?",
        "Is the {s1} sound higher up than the {s2} sound?"}},
      {"closer_than",
       {"Does the {s1} sound arrive from a smaller direct distance than the "
        "{s2} sound?",
        "Is the origin of the {s1} sound located closer than the origin of "
        "the {s2} sound?",
        "Is {s1} coming from a nearer point than {s2}?"}},
  };

  CotTemplates lr;
  lr.question_x = {"Which sound can be heard to the left of the receiver?",
                   "What sound originates from the receiver's left side?"};
  lr.question_y = {"Which sound can be heard to the right of the receiver?",
                   "What sound originates from the receiver's right side?"};
  lr.one_x = {
      "{s1} originates from {s1p} while {s2} is at {s2p}. Therefore, {s1} is "
      "on the left side of the receiver."};
  lr.one_y = {
      "Relative to the receiver, {s1} comes from {s1p} and {s2} from {s2p}. "
      "This shows that {s2} lies on the right."};
  lr.both_x = {
      "Both {s1} and {s2} are positioned at {s1p} and {s2p}, which lie to "
      "the left of the receiver.",
      "Relative to the receiver, {s1} and {s2} are detected at {s1p} and "
      "{s2p}. Thus, they both lie on the left."};
  lr.both_y = {
      "Since {s1} is at {s1p} and {s2} is at {s2p}, and both positions are "
      "on the right, the two sounds lie on the right side of the receiver.",
      "Relative to the receiver, {s1} and {s2} are detected at {s1p} and "
      "{s2p}. Thus, they both lie on the right."};

  CotTemplates fb;
  fb.question_x = {
      "From the receiver's perspective, which sound originates ahead?",
      "Which sound can be heard in front of the receiver?"};
  fb.question_y = {
      "From the receiver's perspective, which sound originates behind?",
      "Which sound can be heard behind the receiver?"};
  fb.one_x = {
      "{s1} originates from {s1p} while {s2} is at {s2p}. Therefore, {s1} is "
      "in front of the receiver."};
  fb.one_y = {
      "{s1} is located at {s1p}, while {s2} is positioned at {s2p}. "
      "Therefore, {s2} is behind the receiver."};
  fb.both_x = {
      "Since {s1} comes from {s1p} and {s2} from {s2p}, both sounds are in "
      "front of the receiver."};
  fb.both_y = {
      "Because {s1} originates from {s1p} and {s2} from {s2p}, both sources "
      "are located at the back side."};

  CotTemplates ud;
  ud.question_x = {
      "Identify the sound that is located on the upper side of the receiver.",
      "Which sound comes from above the receiver?"};
  ud.question_y = {
      "Identify the sound that is located on the lower side of the receiver.",
      "Which sound comes from below the receiver?"};
  ud.one_x = {
      "{s1} is at {s1p}, while {s2} is at {s2p}. Therefore, {s1} is coming "
      "from above the receiver."};
  ud.one_y = {
      "With respect to the receiver, {s1} at {s1p} and {s2} at {s2p} "
      "indicate that {s2} is on the lower side.",
      "Because {s1} comes from {s1p} and {s2} from {s2p}, the source below "
      "is {s2}."};
  ud.both_x = {
      "Because {s1} originates from {s1p} and {s2} from {s2p}, both are "
      "situated on the upper side."};
  ud.both_y = {
      "Since {s1} is at {s1p} and {s2} at {s2p}, both sounds are located "
      "beneath."};

  b.type4 = {{"left_right", lr}, {"front_back", fb}, {"up_down", ud}};
  return b;
}

std::vector<std::string> template_placeholders(std::string_view tpl) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while ((pos = tpl.find('{', pos)) != std::string_view::npos) {
    const auto end = tpl.find('}', pos);
    if (end == std::string_view::npos) throw Error("unclosed placeholder");
    out.emplace_back(tpl.substr(pos + 1, end - pos - 1));
    pos = end + 1;
  }
  return out;
}

std::string fill_template(std::string_view tpl,
                          const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const auto open = tpl.find('{', pos);
    if (open == std::string_view::npos) {
      out += tpl.substr(pos);
      return out;
    }
    const auto close = tpl.find('}', open);
    if (close == std::string_view::npos) throw Error("unclosed placeholder");
    out += tpl.substr(pos, open - pos);
    const std::string name(tpl.substr(open + 1, close - open - 1));
    const auto it = values.find(name);
    if (it == values.end()) throw Error("unknown placeholder {" + name + "}");
    out += it->second;
    pos = close + 1;
  }
}

namespace {

void check_list(const std::vector<std::string>& list, const std::string& what,
                const std::set<std::string>& allowed) {
  if (list.empty()) throw Error("template list " + what + " is empty");
  for (const auto& t : list)
    for (const auto& p : template_placeholders(t))
      if (!allowed.count(p))
        throw Error("template list " + what + " uses unknown placeholder {" +
                    p + "}");
}

}  // namespace

void TemplateBank::validate() const {
  check_list(type1_single, "type1_single", {});
  check_list(type1_dual, "type1_dual", {"hour", "vertical", "distance"});
  check_list(type2_single, "type2_single", {});
  check_list(type2_dual, "type2_dual", {"cls"});
  for (Relation r : kAllRelations) {
    const auto it = type3.find(relation_key(r));
    if (it == type3.end())
      throw Error(std::string("missing type3 relation ") + relation_key(r));
    const std::set<std::string> allowed =
        static_cast<int>(r) < static_cast<int>(Relation::kLeftOfOther)
            ? std::set<std::string>{"s1"}
            : std::set<std::string>{"s1", "s2"};
    check_list(it->second, std::string("type3.") + it->first, allowed);
  }
  for (const auto& [k, v] : type3)
    if (!relation_from_key(k)) throw Error("unknown type3 relation " + k);
  const std::set<std::string> cot = {"s1", "s2", "s1p", "s2p"};
  for (Axis a : kAllAxes) {
    const auto it = type4.find(axis_key(a));
    if (it == type4.end())
      throw Error(std::string("missing type4 axis ") + axis_key(a));
    const std::string base = std::string("type4.") + axis_key(a) + ".";
    const auto& t = it->second;
    check_list(t.question_x, base + "question_x", {});
    check_list(t.question_y, base + "question_y", {});
    check_list(t.one_x, base + "one_x", cot);
    check_list(t.one_y, base + "one_y", cot);
    check_list(t.both_x, base + "both_x", cot);
    check_list(t.both_y, base + "both_y", cot);
  }
  for (const auto& [k, v] : type4)
    if (!axis_from_key(k)) throw Error("unknown type4 axis " + k);
}

const std::vector<std::string>& TemplateBank::relation_templates(
    Relation r) const {
  const auto it = type3.find(relation_key(r));
  if (it == type3.end())
    throw Error(std::string("missing type3 relation ") + relation_key(r));
  return it->second;
}

const CotTemplates& TemplateBank::axis_templates(Axis a) const {
  const auto it = type4.find(axis_key(a));
  if (it == type4.end())
    throw Error(std::string("missing type4 axis ") + axis_key(a));
  return it->second;
}

json to_json(const TemplateBank& b) {
  json j;
  j["type1_single"] = b.type1_single;
  j["type1_dual"] = b.type1_dual;
  j["type2_single"] = b.type2_single;
  j["type2_dual"] = b.type2_dual;
  j["type3"] = b.type3;
  json t4 = json::object();
  for (const auto& [k, t] : b.type4)
    t4[k] = {{"question_x", t.question_x}, {"question_y", t.question_y},
             {"one_x", t.one_x},           {"one_y", t.one_y},
             {"both_x", t.both_x},         {"both_y", t.both_y}};
  j["type4"] = t4;
  return j;
}

TemplateBank template_bank_from_json(const json& j) {
  TemplateBank b;
  try {
    j.at("type1_single").get_to(b.type1_single);
    j.at("type1_dual").get_to(b.type1_dual);
    j.at("type2_single").get_to(b.type2_single);
    j.at("type2_dual").get_to(b.type2_dual);
    j.at("type3").get_to(b.type3);
    for (const auto& [k, t] : j.at("type4").items()) {
      CotTemplates c;
      t.at("question_x").get_to(c.question_x);
      t.at("question_y").get_to(c.question_y);
      t.at("one_x").get_to(c.one_x);
      t.at("one_y").get_to(c.one_y);
      t.at("both_x").get_to(c.both_x);
      t.at("both_y").get_to(c.both_y);
      b.type4[k] = std::move(c);
    }
  } catch (const json::exception& e) {
    throw Error(std::string("template bank: ") + e.what());
  }
  b.validate();
  return b;
}

TemplateBank load_templates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("template bank " + path.string() + ": " + e.what());
  }
  return template_bank_from_json(j);
}

void save_templates(const std::filesystem::path& path,
                    const TemplateBank& bank) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(bank).dump(2) << '\n';
}

}  // namespace roomqa::corpus
