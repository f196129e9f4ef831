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

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "roomqa/corpus/manifest.hpp"
#include "roomqa/corpus/templates.hpp"
#include "roomqa/eval/report.hpp"
#include "roomqa/pipeline/pipeline.hpp"

namespace fs = std::filesystem;
using namespace roomqa;

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out;
};

void add_config_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "pipeline config JSON")->required();
  cmd->add_option("--seed", o.seed, "override master_seed");
  cmd->add_option("--workers", o.workers, "override worker count");
  cmd->add_option("--out", o.out, "override output directory");
}

pipeline::PipelineConfig resolve(const Overrides& o) {
  auto cfg = pipeline::load_config(o.config);
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.workers) cfg.workers = *o.workers;
  if (o.out) cfg.output_dir = *o.out;
  return cfg;
}

void log_line(const std::string& s) { std::cerr << s << '\n'; }

int run_stages(const Overrides& o, const std::string& stages) {
  const auto cfg = resolve(o);
  pipeline::run_pipeline(cfg, pipeline::parse_stages(stages), log_line);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"roomqa: binaural room-acoustics QA corpus toolkit"};
  app.require_subcommand(1);

  Overrides run_o;
  std::string stages = "all";
  auto* run = app.add_subcommand("run", "run pipeline stages");
  add_config_flags(run, run_o);
  run->add_option("--stages", stages, "all or a comma list of synth,render,qa,features,split");

  struct Single {
    const char* name;
    const char* stage;
    const char* help;
  };
  const Single singles[] = {
      {"synth-rirs", "synth", "sample scenes, write RIRs and depth"},
      {"render", "render", "render binaural clips"},
      {"gen-qa", "qa", "generate and self-audit QA pairs"},
      {"features", "features", "write feature tensors"},
      {"split", "split", "room- and clip-disjoint train/test split"},
  };
  std::vector<Overrides> single_o(std::size(singles));
  std::vector<CLI::App*> single_cmd;
  for (std::size_t i = 0; i < std::size(singles); ++i) {
    single_cmd.push_back(app.add_subcommand(singles[i].name, singles[i].help));
    add_config_flags(single_cmd.back(), single_o[i]);
  }

  std::string qa_path, pred_path, protocol = "both", report_dir = ".";
  auto* grade = app.add_subcommand("grade", "grade predictions against a QA corpus");
  grade->add_option("--qa", qa_path, "qa.jsonl")->required();
  grade->add_option("--pred", pred_path, "predictions JSONL {qa_id, raw_text, scores?}")
      ->required();
  grade->add_option("--protocol", protocol, "sector protocol")
      ->check(CLI::IsMember({"12bin", "4bin", "both"}));
  grade->add_option("--out", report_dir, "directory for report.json and report.txt");

  std::string inspect_dir;
  double audit_fraction = 0.01;
  auto* inspect = app.add_subcommand("inspect", "check an output directory");
  inspect->add_option("--out", inspect_dir, "pipeline output directory")->required();
  inspect->add_option("--audit-fraction", audit_fraction,
                      "share of QA answers re-derived from geometry");

  std::string pool_dir;
  int pool_n = 60, pool_sr = 32000;
  std::uint64_t pool_seed = 1;
  auto* demo = app.add_subcommand("demo-pool", "write a synthetic clip pool");
  demo->add_option("--out", pool_dir, "pool directory")->required();
  demo->add_option("--n", pool_n, "number of clips");
  demo->add_option("--seed", pool_seed, "seed");
  demo->add_option("--sample-rate", pool_sr, "sample rate (Hz)");

  std::string tpl_out;
  auto* tpl = app.add_subcommand("write-templates", "write the built-in template bank");
  tpl->add_option("--out", tpl_out, "JSON path")->required();

  std::string cfg_out;
  auto* wcfg = app.add_subcommand("write-config", "write a default pipeline config");
  wcfg->add_option("--out", cfg_out, "JSON path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_stages(run_o, stages);
    for (std::size_t i = 0; i < single_cmd.size(); ++i)
      if (single_cmd[i]->parsed()) return run_stages(single_o[i], singles[i].stage);

    if (grade->parsed()) {
      const auto qa = corpus::read_qa(qa_path);
      const auto preds = eval::read_predictions(pred_path);
      eval::GradeOptions opt;
      opt.sector_12 = protocol != "4bin";
      opt.sector_4 = protocol != "12bin";
      const auto report = eval::grade(qa, preds, opt);
      fs::create_directories(report_dir);
      eval::write_report(fs::path(report_dir) / "report", report);
      std::cout << report.to_table();
      return 0;
    }
    if (inspect->parsed()) {
      const auto r = pipeline::inspect_outputs(inspect_dir, audit_fraction);
      std::cout << "samples " << r.n_samples << ", files " << r.n_files
                << ", qa " << r.n_qa << ", audited " << r.n_audited << '\n';
      for (const auto& p : r.problems) std::cout << "problem: " << p << '\n';
      std::cout << (r.ok() ? "OK" : "FAILED") << '\n';
      return r.ok() ? 0 : 1;
    }
    if (demo->parsed()) {
      corpus::write_demo_clip_pool(pool_dir, pool_n, pool_seed, pool_sr);
      log_line("wrote " + std::to_string(pool_n) + " clips to " + pool_dir);
      return 0;
    }
    if (tpl->parsed()) {
      corpus::save_templates(tpl_out, corpus::TemplateBank::defaults());
      return 0;
    }
    if (wcfg->parsed()) {
      pipeline::save_config(cfg_out, pipeline::PipelineConfig{});
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
