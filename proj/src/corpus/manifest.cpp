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

#include "roomqa/corpus/manifest.hpp"

#include <fstream>

namespace roomqa::corpus {

using nlohmann::json;

namespace {

json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error("expected 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

geometry::Vertical vertical_from(const std::string& s) {
  if (s == "up") return geometry::Vertical::kUp;
  if (s == "down") return geometry::Vertical::kDown;
  throw Error("bad vertical '" + s + "'");
}

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json to_json(const scene::RoomSpec& r) {
  return {{"room_id", r.room_id},
          {"dims_m", vec(r.dims)},
          {"absorption", r.absorption},
          {"max_order", r.max_order},
          {"speed_of_sound", r.speed_of_sound}};
}

scene::RoomSpec room_from_json(const json& j) {
  return guarded("room", [&] {
    scene::RoomSpec r;
    r.room_id = j.at("room_id").get<std::string>();
    r.dims = vec_from(j.at("dims_m"));
    r.absorption = j.at("absorption").get<std::array<double, 6>>();
    r.max_order = j.at("max_order").get<int>();
    r.speed_of_sound = j.at("speed_of_sound").get<double>();
    return r;
  });
}

json to_json(const scene::SceneSpec& s) {
  json sources = json::array();
  for (const auto& src : s.sources)
    sources.push_back({{"clip_id", src.clip_id},
                       {"class_labels", src.class_labels},
                       {"position_m", vec(src.position)}});
  return {{"room", to_json(s.room)},
          {"receiver",
           {{"position_m", vec(s.receiver.position())},
            {"yaw_rad", s.receiver.yaw_rad()}}},
          {"sources", sources},
          {"seed", s.seed}};
}

scene::SceneSpec scene_from_json(const json& j) {
  return guarded("scene", [&] {
    scene::SceneSpec s;
    s.room = room_from_json(j.at("room"));
    const auto& rx = j.at("receiver");
    s.receiver = geometry::Pose(vec_from(rx.at("position_m")),
                                rx.at("yaw_rad").get<double>());
    for (const auto& src : j.at("sources")) {
      scene::SourceSpec spec;
      spec.clip_id = src.at("clip_id").get<std::string>();
      spec.class_labels = src.at("class_labels").get<std::vector<std::string>>();
      spec.position = vec_from(src.at("position_m"));
      s.sources.push_back(std::move(spec));
    }
    s.seed = j.at("seed").get<std::uint64_t>();
    return s;
  });
}

json to_json(const geometry::DirectionLabel& l) {
  return {{"clock_hour", l.clock_hour},
          {"vertical", geometry::vertical_name(l.vertical)},
          {"distance_bin", l.distance_bin}};
}

geometry::DirectionLabel label_from_json(const json& j) {
  return guarded("label", [&] {
    geometry::DirectionLabel l;
    l.clock_hour = j.at("clock_hour").get<int>();
    l.vertical = vertical_from(j.at("vertical").get<std::string>());
    l.distance_bin = j.at("distance_bin").get<int>();
    return l;
  });
}

namespace {

json located_label(const geometry::DirectionLabel& l,
                   const geometry::SphericalDoa& d) {
  json j = to_json(l);
  j["azimuth_deg"] = d.azimuth_deg;
  j["elevation_deg"] = d.elevation_deg;
  j["distance_m"] = d.distance_m;
  return j;
}

geometry::SphericalDoa doa_from(const json& j) {
  return {j.at("azimuth_deg").get<double>(),
          j.at("elevation_deg").get<double>(),
          j.at("distance_m").get<double>()};
}

}  // namespace

json to_json(const SampleRecord& s) {
  json sources = json::array();
  for (const auto& t : s.sources)
    sources.push_back({{"clip_id", t.clip_id},
                       {"class_labels", t.class_labels},
                       {"label", located_label(t.label, t.doa)}});
  return {{"sample_id", s.sample_id},
          {"scene_index", s.scene_index},
          {"room_id", s.room_id()},
          {"audio", s.audio_path},
          {"rirs", s.rir_paths},
          {"depth", s.depth_path},
          {"scene", to_json(s.scene)},
          {"sources", sources}};
}

SampleRecord sample_from_json(const json& j) {
  return guarded("sample", [&] {
    SampleRecord s;
    s.sample_id = j.at("sample_id").get<std::string>();
    s.scene_index = j.at("scene_index").get<std::size_t>();
    s.audio_path = j.at("audio").get<std::string>();
    s.rir_paths = j.at("rirs").get<std::vector<std::string>>();
    s.depth_path = j.at("depth").get<std::string>();
    s.scene = scene_from_json(j.at("scene"));
    for (const auto& t : j.at("sources")) {
      SourceTruth st;
      st.clip_id = t.at("clip_id").get<std::string>();
      st.class_labels = t.at("class_labels").get<std::vector<std::string>>();
      st.doa = doa_from(t.at("label"));
      st.label = label_from_json(t.at("label"));
      s.sources.push_back(std::move(st));
    }
    for (std::size_t i = 0; i < s.sources.size() && i < s.scene.sources.size();
         ++i)
      s.sources[i].position = s.scene.sources[i].position;
    return s;
  });
}

json to_json(const StructuredTruth& truth) {
  if (const auto* t = std::get_if<PerceptionTruth>(&truth))
    return {{"source_index", t->source_index},
            {"dual", t->dual},
            {"class_labels", t->class_labels},
            {"label", located_label(t->label, t->doa)}};
  if (const auto* t = std::get_if<RelationTruth>(&truth))
    return {{"relation", relation_key(t->relation)},
            {"subject", t->subject},
            {"other", t->other},
            {"answer", t->answer}};
  const auto& t = std::get<CotTruth>(truth);
  json sources = json::array();
  for (int k = 0; k < 2; ++k)
    sources.push_back(
        {{"source_index", t.source_index[static_cast<std::size_t>(k)]},
         {"name", t.names[static_cast<std::size_t>(k)]},
         {"clock_hour", t.clock_hours[static_cast<std::size_t>(k)]},
         {"vertical",
          geometry::vertical_name(t.verticals[static_cast<std::size_t>(k)])}});
  return {{"axis", axis_key(t.axis)},
          {"variant", variant_key(t.variant)},
          {"rationale", sources},
          {"final", {{"entity", t.both() ? "both" : t.entity()},
                     {"side", t.side()}}}};
}

StructuredTruth truth_from_json(QaType type, const json& j) {
  return guarded("structured_truth", [&]() -> StructuredTruth {
    switch (type) {
      case QaType::kI:
      case QaType::kII: {
        PerceptionTruth t;
        t.source_index = j.at("source_index").get<int>();
        t.dual = j.at("dual").get<bool>();
        t.class_labels = j.at("class_labels").get<std::vector<std::string>>();
        t.label = label_from_json(j.at("label"));
        t.doa = doa_from(j.at("label"));
        return t;
      }
      case QaType::kIII: {
        RelationTruth t;
        const auto r = relation_from_key(j.at("relation").get<std::string>());
        if (!r) throw Error("unknown relation");
        t.relation = *r;
        t.subject = j.at("subject").get<int>();
        t.other = j.at("other").get<int>();
        t.answer = j.at("answer").get<bool>();
        return t;
      }
      case QaType::kIV: {
        CotTruth t;
        const auto a = axis_from_key(j.at("axis").get<std::string>());
        const auto v = variant_from_key(j.at("variant").get<std::string>());
        if (!a || !v) throw Error("unknown axis or variant");
        t.axis = *a;
        t.variant = *v;
        const auto& r = j.at("rationale");
        if (r.size() != 2) throw Error("rationale needs two sources");
        for (std::size_t k = 0; k < 2; ++k) {
          t.source_index[k] = r[k].at("source_index").get<int>();
          t.names[k] = r[k].at("name").get<std::string>();
          t.clock_hours[k] = r[k].at("clock_hour").get<int>();
          t.verticals[k] = vertical_from(r[k].at("vertical").get<std::string>());
        }
        return t;
      }
    }
    throw Error("unknown qa_type");
  });
}

json to_json(const QaPair& q) {
  return {{"qa_id", q.qa_id},
          {"sample_id", q.sample_id},
          {"qa_type", qa_type_name(q.type)},
          {"question", q.question},
          {"answer", q.answer},
          {"structured_truth", to_json(q.truth)},
          {"template_id", q.template_id}};
}

QaPair qa_from_json(const json& j) {
  return guarded("qa", [&] {
    QaPair q;
    q.qa_id = j.at("qa_id").get<std::string>();
    q.sample_id = j.at("sample_id").get<std::string>();
    const auto t = qa_type_from_name(j.at("qa_type").get<std::string>());
    if (!t) throw Error("unknown qa_type");
    q.type = *t;
    q.question = j.at("question").get<std::string>();
    q.answer = j.at("answer").get<std::string>();
    q.template_id = j.at("template_id").get<std::string>();
    q.truth = truth_from_json(q.type, j.at("structured_truth"));
    return q;
  });
}

json to_json(const SplitResult& s) {
  return {{"train", s.train}, {"test", s.test}, {"evicted", s.evicted}};
}

void write_jsonl(const std::filesystem::path& path,
                 const std::vector<json>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& r : rows) out << r.dump() << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

std::vector<json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<json> rows;
  std::string line;
  long n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<SampleRecord> read_samples(const std::filesystem::path& path) {
  std::vector<SampleRecord> out;
  for (const auto& j : read_jsonl(path)) out.push_back(sample_from_json(j));
  return out;
}

std::vector<QaPair> read_qa(const std::filesystem::path& path) {
  std::vector<QaPair> out;
  for (const auto& j : read_jsonl(path)) out.push_back(qa_from_json(j));
  return out;
}

SplitItem split_item(const SampleRecord& s) {
  SplitItem it{s.sample_id, s.room_id(), {}};
  for (const auto& src : s.scene.sources) it.clip_ids.push_back(src.clip_id);
  return it;
}

}  // namespace roomqa::corpus
