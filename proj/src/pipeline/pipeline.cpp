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

#include "roomqa/pipeline/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>

#include "roomqa/acoustics/descriptors.hpp"
#include "roomqa/corpus/manifest.hpp"
#include "roomqa/dsp/features.hpp"
#include "roomqa/dsp/wav_io.hpp"
#include "roomqa/rng.hpp"
#include "roomqa/scene/depth.hpp"
#include "roomqa/scene/ism.hpp"

namespace roomqa::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Per-scene RNG streams.
enum : std::uint64_t {
  kStreamRoom = 1,
  kStreamCount = 2,
  kStreamScene = 3,
  kStreamClips = 4,
  kStreamPerception = 10,
  kStreamRelational = 11,
  kStreamCot = 12,
  kStreamBalance = 13,
  kStreamSplit = 14,
};

std::string sample_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%06zu", i);
  return buf;
}

void say(const LogFn& log, const std::string& msg) {
  if (log) log(msg);
}

void reset_dir(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
}

struct Failure {
  std::size_t index;
  std::string sample_id;
  std::string error;
};

void write_failures(const fs::path& path, std::vector<Failure> failures) {
  std::sort(failures.begin(), failures.end(),
            [](const Failure& a, const Failure& b) { return a.index < b.index; });
  std::vector<json> rows;
  for (const auto& f : failures)
    rows.push_back({{"scene_index", f.index},
                    {"sample_id", f.sample_id},
                    {"error", f.error}});
  corpus::write_jsonl(path, rows);
}

void require(const fs::path& p, Stage needed, Stage stage) {
  if (!fs::exists(p))
    throw Error(std::string("stage ") + stage_name(stage) + " needs " +
                stage_name(needed) + " outputs (" + p.filename().string() +
                " missing)");
}

json descriptors_json(const acoustics::BinauralRir& rir) {
  const auto d = acoustics::try_acoustic_descriptors(rir);
  json out;
  for (int c = 0; c < 2; ++c) {
    const auto& p = d[static_cast<std::size_t>(c)];
    json j = {{"rt60_s", p.rt60_s ? json(*p.rt60_s) : json(nullptr)},
              {"edt_s", p.edt_s ? json(*p.edt_s) : json(nullptr)},
              {"drr_db", p.drr_db}};
    if (!p.diagnostic.empty()) j["diagnostic"] = p.diagnostic;
    out[c == 0 ? "left" : "right"] = j;
  }
  return out;
}

corpus::TemplateBank template_bank(const PipelineConfig& c) {
  return c.templates.empty() ? corpus::TemplateBank::defaults()
                             : corpus::load_templates(c.templates);
}

StageSummary synth(const PipelineConfig& cfg, const LogFn& log) {
  const OutputLayout out{cfg.output_dir};
  const auto pool = corpus::load_clip_pool(cfg.clip_pool, cfg.sample_rate_hz,
                                           cfg.clip_seconds);
  const auto rooms = cfg.room_bank();
  const auto groups = static_cast<std::size_t>(cfg.clip_groups);
  std::vector<std::vector<std::size_t>> by_group(groups);
  for (std::size_t k = 0; k < pool.size(); ++k) by_group[k % groups].push_back(k);
  for (std::size_t g = 0; g < groups; ++g)
    if (by_group[g].empty())
      throw Error("clip_groups: larger than the clip pool (" +
                  std::to_string(pool.size()) + " clips)");

  reset_dir(out.root / "rirs");
  reset_dir(out.root / "depth");
  const auto n = static_cast<std::size_t>(cfg.n_scenes);
  std::vector<std::optional<json>> rows(n);
  std::vector<Failure> failures;
  std::mutex mu;

  parallel_for(n, cfg.workers, [&](std::size_t i) {
    const std::string sid = sample_id(i);
    try {
      const auto seed = cfg.master_seed;
      Rng room_rng(Rng::derive(seed, i, kStreamRoom));
      const auto room_idx = static_cast<std::size_t>(room_rng.below(rooms.size()));
      const auto& room = rooms[room_idx];
      Rng count_rng(Rng::derive(seed, i, kStreamCount));
      const int n_src = count_rng.bernoulli(cfg.dual_fraction) ? 2 : 1;
      auto scene = scene::sample_scene(room, Rng::derive(seed, i, kStreamScene), n_src);

      const auto& group = by_group[room_idx % groups];
      Rng clip_rng(Rng::derive(seed, i, kStreamClips));
      std::vector<std::size_t> picked;
      for (int s = 0; s < n_src; ++s) {
        std::size_t k = group[static_cast<std::size_t>(clip_rng.below(group.size()))];
        if (s == 1 && group.size() > 1) {
          while (k == picked[0])
            k = group[static_cast<std::size_t>(clip_rng.below(group.size()))];
        }
        picked.push_back(k);
        const auto& clip = pool.clips()[k];
        scene.sources[static_cast<std::size_t>(s)].clip_id = clip.clip_id;
        scene.sources[static_cast<std::size_t>(s)].class_labels = clip.class_labels;
      }
      scene.validate();

      scene::IsmConfig ism;
      ism.sample_rate_hz = cfg.sample_rate_hz;
      json rir_paths = json::array(), desc = json::array();
      for (int s = 0; s < n_src; ++s) {
        const auto rir = scene::ism_binaural_rir(
            room, scene.receiver, scene.sources[static_cast<std::size_t>(s)].position, ism);
        const std::string rel = "rirs/" + sid + "_" + std::to_string(s) + ".wav";
        dsp::write_wav(out.root / rel, rir.as_waveform());
        rir_paths.push_back(rel);
        desc.push_back(descriptors_json(rir));
      }
      const std::string depth_rel = "depth/" + sid;
      scene::write_depth(out.root / depth_rel,
                         scene::panoramic_depth(room, scene.receiver, cfg.depth));
      rows[i] = json{{"scene_index", i},   {"sample_id", sid},
                     {"scene", corpus::to_json(scene)},
                     {"rirs", rir_paths},  {"depth", depth_rel},
                     {"descriptors", desc}};
    } catch (const std::exception& e) {
      std::lock_guard lock(mu);
      failures.push_back({i, sid, e.what()});
    }
  });

  StageSummary sum{Stage::kSynth, 0, failures.size(), {}};
  std::vector<json> lines;
  for (auto& r : rows)
    if (r) lines.push_back(std::move(*r));
  sum.n_ok = lines.size();
  corpus::write_jsonl(out.scenes(), lines);
  write_failures(out.failures(Stage::kSynth), failures);
  say(log, "synth: " + std::to_string(sum.n_ok) + " scenes, " +
               std::to_string(sum.n_failed) + " failed");
  return sum;
}

StageSummary render(const PipelineConfig& cfg, const LogFn& log) {
  const OutputLayout out{cfg.output_dir};
  require(out.scenes(), Stage::kSynth, Stage::kRender);
  const auto scenes = corpus::read_jsonl(out.scenes());
  const auto pool = corpus::load_clip_pool(cfg.clip_pool, cfg.sample_rate_hz,
                                           cfg.clip_seconds);
  reset_dir(out.root / "audio");
  std::vector<std::optional<json>> rows(scenes.size());
  std::vector<Failure> failures;
  std::mutex mu;
  corpus::RenderConfig rc{cfg.clip_seconds, cfg.target_rms_dbfs};

  parallel_for(scenes.size(), cfg.workers, [&](std::size_t i) {
    const auto& row = scenes[i];
    std::string sid = row.value("sample_id", "");
    const auto index = row.value("scene_index", i);
    try {
      const auto scene = corpus::scene_from_json(row.at("scene"));
      std::vector<const corpus::EventClip*> clips;
      std::vector<acoustics::BinauralRir> rirs;
      std::vector<std::string> rir_paths;
      for (const auto& s : scene.sources) clips.push_back(&pool.find(s.clip_id));
      for (const auto& p : row.at("rirs")) {
        rir_paths.push_back(p.get<std::string>());
        rirs.push_back(acoustics::BinauralRir::from_waveform(
            dsp::read_wav(out.root / rir_paths.back())));
      }
      auto rendered = corpus::render_sample(scene, clips, rirs, rc);
      auto& rec = rendered.record;
      rec.sample_id = sid;
      rec.scene_index = index;
      rec.audio_path = "audio/" + sid + ".wav";
      rec.rir_paths = rir_paths;
      rec.depth_path = row.at("depth").get<std::string>();
      dsp::write_wav(out.root / rec.audio_path, rendered.audio);
      rows[i] = corpus::to_json(rec);
    } catch (const std::exception& e) {
      std::lock_guard lock(mu);
      failures.push_back({index, sid, e.what()});
    }
  });

  StageSummary sum{Stage::kRender, 0, failures.size(), {}};
  std::vector<json> lines;
  for (auto& r : rows)
    if (r) lines.push_back(std::move(*r));
  sum.n_ok = lines.size();
  corpus::write_jsonl(out.samples(), lines);
  write_failures(out.failures(Stage::kRender), failures);
  say(log, "render: " + std::to_string(sum.n_ok) + " samples, " +
               std::to_string(sum.n_failed) + " failed");
  return sum;
}

StageSummary gen_qa(const PipelineConfig& cfg, const LogFn& log) {
  const OutputLayout out{cfg.output_dir};
  require(out.samples(), Stage::kRender, Stage::kQa);
  const auto samples = corpus::read_samples(out.samples());
  const auto bank = template_bank(cfg);
  bank.validate();

  struct PerSample {
    std::vector<corpus::QaPair> perception, relational, cot;
    corpus::GenerationLog log;
  };
  std::vector<PerSample> per(samples.size());
  parallel_for(samples.size(), cfg.workers, [&](std::size_t i) {
    const auto& s = samples[i];
    auto& p = per[i];
    const auto seed = cfg.master_seed;
    Rng r1(Rng::derive(seed, s.scene_index, kStreamPerception));
    Rng r2(Rng::derive(seed, s.scene_index, kStreamRelational));
    Rng r3(Rng::derive(seed, s.scene_index, kStreamCot));
    p.perception = corpus::gen_qa_perception(s, r1, bank, &p.log);
    p.relational = corpus::gen_qa_relational(s, r2, bank, &p.log);
    p.cot = corpus::gen_qa_cot(s, r3, bank, &p.log);
  });

  corpus::GenerationLog glog;
  std::vector<corpus::QaPair> candidates;
  std::size_t n_dual = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    glog.merge(per[i].log);
    n_dual += samples[i].sources.size() == 2;
    for (auto& q : per[i].relational) candidates.push_back(std::move(q));
  }
  const auto target = static_cast<std::size_t>(
      std::llround(cfg.type3_per_dual_sample * static_cast<double>(n_dual)));
  auto kept = corpus::balance_relational(
      candidates, target, Rng::derive(cfg.master_seed, 0, kStreamBalance));
  std::map<std::string, std::vector<corpus::QaPair>> type3_by_sample;
  for (auto& q : kept) type3_by_sample[q.sample_id].push_back(std::move(q));

  std::vector<corpus::QaPair> all;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (auto& q : per[i].perception) all.push_back(std::move(q));
    for (auto& q : type3_by_sample[samples[i].sample_id]) all.push_back(std::move(q));
    for (auto& q : per[i].cot) all.push_back(std::move(q));
  }

  // Self-audit every pair against its scene geometry.
  std::map<std::string, const corpus::SampleRecord*> by_id;
  for (const auto& s : samples) by_id[s.sample_id] = &s;
  std::vector<std::string> problems;
  std::map<std::string, long> counts;
  std::map<std::string, std::array<long, 2>> yes_no;
  for (const auto& q : all) {
    ++counts[std::string("type_") + corpus::qa_type_name(q.type)];
    if (const auto* t = std::get_if<corpus::RelationTruth>(&q.truth))
      ++yes_no[corpus::relation_key(t->relation)][t->answer ? 1 : 0];
    if (auto p = corpus::audit_qa_pair(q, *by_id.at(q.sample_id)))
      problems.push_back(*p);
  }
  if (!problems.empty())
    throw Error("qa self-audit failed on " + std::to_string(problems.size()) +
                " pairs, first: " + problems.front());

  std::vector<json> rows;
  rows.reserve(all.size());
  for (const auto& q : all) rows.push_back(corpus::to_json(q));
  corpus::write_jsonl(out.qa(), rows);

  json balance = json::object();
  for (const auto& [k, v] : yes_no) balance[k] = {{"yes", v[1]}, {"no", v[0]}};
  json log_json = {{"counts", counts},
                   {"skipped", glog.skipped},
                   {"type3_candidates", candidates.size()},
                   {"type3_target", target},
                   {"type3_balance", balance},
                   {"audit", {{"checked", all.size()}, {"failed", 0}}}};
  std::ofstream(out.qa_log()) << log_json.dump(2) << '\n';

  StageSummary sum{Stage::kQa, all.size(), 0, counts};
  std::string msg = "qa: " + std::to_string(all.size()) + " pairs";
  for (const auto& [k, v] : counts) msg += ", " + k + " " + std::to_string(v);
  say(log, msg);
  return sum;
}

StageSummary features(const PipelineConfig& cfg, const LogFn& log) {
  const OutputLayout out{cfg.output_dir};
  require(out.samples(), Stage::kRender, Stage::kFeatures);
  const auto samples = corpus::read_samples(out.samples());
  reset_dir(out.root / "features");
  std::vector<std::optional<json>> rows(samples.size());
  std::vector<Failure> failures;
  std::mutex mu;
  parallel_for(samples.size(), cfg.workers, [&](std::size_t i) {
    const auto& s = samples[i];
    try {
      const auto w = dsp::read_wav(out.root / s.audio_path);
      const std::string rel = "features/" + s.sample_id;
      dsp::write_feature_tensor(out.root / rel, dsp::assemble_features(w));
      rows[i] = json{{"sample_id", s.sample_id}, {"features", rel}};
    } catch (const std::exception& e) {
      std::lock_guard lock(mu);
      failures.push_back({s.scene_index, s.sample_id, e.what()});
    }
  });
  StageSummary sum{Stage::kFeatures, 0, failures.size(), {}};
  std::vector<json> lines;
  for (auto& r : rows)
    if (r) lines.push_back(std::move(*r));
  sum.n_ok = lines.size();
  corpus::write_jsonl(out.features(), lines);
  write_failures(out.failures(Stage::kFeatures), failures);
  say(log, "features: " + std::to_string(sum.n_ok) + " tensors, " +
               std::to_string(sum.n_failed) + " failed");
  return sum;
}

StageSummary split(const PipelineConfig& cfg, const LogFn& log) {
  const OutputLayout out{cfg.output_dir};
  require(out.samples(), Stage::kRender, Stage::kSplit);
  const auto samples = corpus::read_samples(out.samples());
  std::vector<corpus::SplitItem> items;
  for (const auto& s : samples) items.push_back(corpus::split_item(s));
  const auto result = corpus::split_manifest(
      items, cfg.train_fraction, Rng::derive(cfg.master_seed, 0, kStreamSplit));
  if (!corpus::split_is_disjoint(items, result))
    throw Error("split shares a room_id or clip_id");
  json j = corpus::to_json(result);
  j["train_fraction"] = cfg.train_fraction;
  std::ofstream(out.split()) << j.dump(2) << '\n';
  StageSummary sum{Stage::kSplit, result.train.size() + result.test.size(),
                   0,
                   {{"train", static_cast<long>(result.train.size())},
                    {"test", static_cast<long>(result.test.size())},
                    {"evicted", static_cast<long>(result.evicted.size())}}};
  say(log, "split: train " + std::to_string(result.train.size()) + ", test " +
               std::to_string(result.test.size()) + ", evicted " +
               std::to_string(result.evicted.size()));
  return sum;
}

}  // namespace

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::kSynth: return "synth";
    case Stage::kRender: return "render";
    case Stage::kQa: return "qa";
    case Stage::kFeatures: return "features";
    case Stage::kSplit: return "split";
  }
  return "";
}

std::vector<Stage> parse_stages(std::string_view list) {
  static constexpr std::array<Stage, 5> kOrder = {
      Stage::kSynth, Stage::kRender, Stage::kQa, Stage::kFeatures, Stage::kSplit};
  if (list == "all") return {kOrder.begin(), kOrder.end()};
  std::set<Stage> chosen;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const auto end = std::min(list.find(',', pos), list.size());
    const auto name = list.substr(pos, end - pos);
    bool found = false;
    for (Stage s : kOrder)
      if (name == stage_name(s)) {
        chosen.insert(s);
        found = true;
      }
    if (!found) throw Error("stages: unknown stage '" + std::string(name) + "'");
    pos = end + 1;
  }
  return {chosen.begin(), chosen.end()};
}

StageSummary run_stage(const PipelineConfig& config, Stage stage,
                       const LogFn& log) {
  switch (stage) {
    case Stage::kSynth: return synth(config, log);
    case Stage::kRender: return render(config, log);
    case Stage::kQa: return gen_qa(config, log);
    case Stage::kFeatures: return features(config, log);
    case Stage::kSplit: return split(config, log);
  }
  throw Error("unknown stage");
}

std::vector<StageSummary> run_pipeline(const PipelineConfig& config,
                                       const std::vector<Stage>& stages,
                                       const LogFn& log) {
  config.validate();
  if (!fs::exists(fs::path(config.clip_pool) / "clips.csv"))
    throw Error("clip_pool: " + config.clip_pool + "/clips.csv does not exist");
  if (!config.templates.empty() && !fs::exists(config.templates))
    throw Error("templates: " + config.templates + " does not exist");
  fs::create_directories(config.output_dir);
  std::vector<StageSummary> out;
  for (Stage s : stages) out.push_back(run_stage(config, s, log));
  return out;
}

InspectReport inspect_outputs(const fs::path& root, double audit_fraction) {
  InspectReport r;
  const OutputLayout out{root};
  if (!fs::exists(out.samples())) {
    r.problems.push_back("samples.jsonl missing");
    return r;
  }
  const auto samples = corpus::read_samples(out.samples());
  r.n_samples = samples.size();

  std::map<std::string, int> refs;  // relative file path -> reference count
  const auto ref = [&](const std::string& rel) {
    ++refs[rel];
    if (!fs::exists(root / rel)) r.problems.push_back("missing file " + rel);
  };
  std::map<std::string, const corpus::SampleRecord*> by_id;
  for (const auto& s : samples) {
    if (!by_id.emplace(s.sample_id, &s).second)
      r.problems.push_back("duplicate sample_id " + s.sample_id);
    ref(s.audio_path);
    for (const auto& p : s.rir_paths) ref(p);
    ref(s.depth_path + ".f32");
    ref(s.depth_path + ".json");
    if (s.sources.size() != s.scene.sources.size())
      r.problems.push_back(s.sample_id + ": source count differs from scene");
  }
  if (fs::exists(out.features()))
    for (const auto& j : corpus::read_jsonl(out.features())) {
      const auto stem = j.at("features").get<std::string>();
      ref(stem + ".f32");
      ref(stem + ".json");
      if (!by_id.count(j.at("sample_id").get<std::string>()))
        r.problems.push_back("features for unknown sample " + stem);
    }
  for (const char* dir : {"audio", "rirs", "depth", "features"}) {
    if (!fs::exists(root / dir)) continue;
    for (const auto& e : fs::directory_iterator(root / dir)) {
      const auto rel = std::string(dir) + "/" + e.path().filename().string();
      ++r.n_files;
      if (!refs.count(rel)) r.problems.push_back("unreferenced file " + rel);
    }
  }
  for (const auto& [rel, n] : refs)
    if (n != 1) r.problems.push_back("file referenced " + std::to_string(n) + " times: " + rel);

  if (fs::exists(out.qa())) {
    const auto qa = corpus::read_qa(out.qa());
    r.n_qa = qa.size();
    const std::size_t step =
        audit_fraction <= 0.0
            ? qa.size() + 1
            : std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / audit_fraction)));
    for (std::size_t i = 0; i < qa.size(); ++i) {
      const auto it = by_id.find(qa[i].sample_id);
      if (it == by_id.end()) {
        r.problems.push_back(qa[i].qa_id + ": unknown sample_id");
        continue;
      }
      if (i % step != 0) continue;
      ++r.n_audited;
      if (auto p = corpus::audit_qa_pair(qa[i], *it->second)) r.problems.push_back(*p);
    }
  }
  if (fs::exists(out.split())) {
    std::ifstream in(out.split());
    json j;
    in >> j;
    corpus::SplitResult s;
    s.train = j.at("train").get<std::vector<std::string>>();
    s.test = j.at("test").get<std::vector<std::string>>();
    std::vector<corpus::SplitItem> items;
    for (const auto& smp : samples) items.push_back(corpus::split_item(smp));
    if (!corpus::split_is_disjoint(items, s))
      r.problems.push_back("split shares a room_id or clip_id");
  }
  return r;
}

}  // namespace roomqa::pipeline
