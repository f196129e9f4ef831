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

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "roomqa/pipeline/config.hpp"

namespace roomqa::pipeline {

enum class Stage { kSynth, kRender, kQa, kFeatures, kSplit };

const char* stage_name(Stage s);
/// "all" or a comma-separated subset of synth,render,qa,features,split.
/// Returned in pipeline order.
std::vector<Stage> parse_stages(std::string_view list);

struct StageSummary {
  Stage stage = Stage::kSynth;
  std::size_t n_ok = 0;
  std::size_t n_failed = 0;
  std::map<std::string, long> counts;
};

using LogFn = std::function<void(const std::string&)>;

/// Runs `fn(i)` for i in [0, n) on `workers` threads. `fn` must not throw.
template <typename F>
void parallel_for(std::size_t n, int workers, F&& fn) {
  const auto nw = std::max<std::size_t>(
      1, std::min<std::size_t>(static_cast<std::size_t>(workers), n));
  if (nw == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  for (auto& t : pool) t.join();
}

/// Output layout under config.output_dir.
struct OutputLayout {
  std::filesystem::path root;
  std::filesystem::path scenes() const { return root / "scenes.jsonl"; }
  std::filesystem::path samples() const { return root / "samples.jsonl"; }
  std::filesystem::path qa() const { return root / "qa.jsonl"; }
  std::filesystem::path qa_log() const { return root / "qa_log.json"; }
  std::filesystem::path features() const { return root / "features.jsonl"; }
  std::filesystem::path split() const { return root / "split.json"; }
  std::filesystem::path failures(Stage s) const {
    return root / (std::string("failures_") + stage_name(s) + ".jsonl");
  }
};

/// Validates the config and checks referenced paths, then runs the stages in
/// order. Each stage rewrites its own outputs, so re-running is idempotent.
std::vector<StageSummary> run_pipeline(const PipelineConfig& config,
                                       const std::vector<Stage>& stages,
                                       const LogFn& log = {});

StageSummary run_stage(const PipelineConfig& config, Stage stage,
                       const LogFn& log = {});

struct InspectReport {
  std::size_t n_samples = 0;
  std::size_t n_files = 0;
  std::size_t n_qa = 0;
  std::size_t n_audited = 0;
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
};

/// Referential integrity of an output directory: every referenced file
/// exists, every file under the data directories is referenced exactly once,
/// QA pairs resolve to samples, the split is disjoint, and
/// `audit_fraction` of the QA answers are re-derived from geometry.
InspectReport inspect_outputs(const std::filesystem::path& root,
                              double audit_fraction = 0.01);

}  // namespace roomqa::pipeline
