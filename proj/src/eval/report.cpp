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

#include "roomqa/eval/report.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace roomqa::eval {

using corpus::QaType;

MetricsReport grade(const std::vector<corpus::QaPair>& qa,
                    const std::vector<Prediction>& predictions,
                    const GradeOptions& options) {
  if (predictions.empty()) throw Error("no records");
  std::unordered_map<std::string, const corpus::QaPair*> index;
  std::set<std::string> vocab_set;
  for (const auto& q : qa) {
    index.emplace(q.qa_id, &q);
    if (q.type == QaType::kI)
      if (const auto* t = std::get_if<corpus::PerceptionTruth>(&q.truth))
        vocab_set.insert(t->class_labels.begin(), t->class_labels.end());
  }
  const std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());

  MetricsReport r;
  r.n_predictions = predictions.size();
  std::set<std::string> seen;

  std::vector<std::vector<double>> t1_scores;
  std::vector<std::vector<bool>> t1_truth;
  std::vector<std::optional<geometry::SphericalDoa>> doa_pred;
  std::vector<geometry::SphericalDoa> doa_ref;
  std::vector<std::optional<double>> dist_pred;
  std::vector<double> dist_ref;
  std::vector<std::optional<int>> hour_pred;
  std::vector<int> hour_ref;
  std::vector<std::optional<bool>> yes_pred;
  std::vector<bool> yes_ref;
  std::size_t cot_n = 0, cot_final = 0;

  for (const auto& p : predictions) {
    const auto it = index.find(p.qa_id);
    if (it == index.end()) {
      ++r.n_unresolved;
      continue;
    }
    if (!seen.insert(p.qa_id).second) {
      ++r.n_duplicates;
      continue;
    }
    const auto& q = *it->second;
    const auto parsed = parse_prediction(p, q, vocab);
    auto& bd = r.per_type[corpus::qa_type_name(q.type)];
    ++bd.n;
    bd.fully_parsed += parsed.missing.empty();
    ++r.n_graded;

    switch (q.type) {
      case QaType::kI: {
        const auto& t = std::get<corpus::PerceptionTruth>(q.truth);
        std::vector<double> s(vocab.size(), 0.0);
        std::vector<bool> y(vocab.size(), false);
        for (std::size_t c = 0; c < vocab.size(); ++c) {
          y[c] = std::find(t.class_labels.begin(), t.class_labels.end(),
                           vocab[c]) != t.class_labels.end();
          if (!p.scores.empty()) {
            const auto sc = p.scores.find(vocab[c]);
            s[c] = sc == p.scores.end() ? 0.0 : sc->second;
          } else {
            s[c] = std::find(parsed.classes.begin(), parsed.classes.end(),
                             vocab[c]) != parsed.classes.end();
          }
        }
        std::set<std::string> a(parsed.classes.begin(), parsed.classes.end());
        std::set<std::string> b(t.class_labels.begin(), t.class_labels.end());
        bd.correct += a == b;
        t1_scores.push_back(std::move(s));
        t1_truth.push_back(std::move(y));
        break;
      }
      case QaType::kII: {
        const auto& t = std::get<corpus::PerceptionTruth>(q.truth);
        const auto& l = parsed.label;
        doa_ref.push_back(sector_center(t.label.clock_hour, t.label.vertical));
        if (l.clock_hour && l.vertical)
          doa_pred.push_back(sector_center(*l.clock_hour, *l.vertical));
        else
          doa_pred.push_back(std::nullopt);
        dist_ref.push_back(t.doa.distance_m);
        if (l.distance_bin)
          dist_pred.push_back(*l.distance_bin * geometry::kDistanceStepM);
        else
          dist_pred.push_back(std::nullopt);
        hour_pred.push_back(l.clock_hour);
        hour_ref.push_back(t.label.clock_hour);
        bd.correct += l.label() && *l.label() == t.label;
        break;
      }
      case QaType::kIII: {
        const auto& t = std::get<corpus::RelationTruth>(q.truth);
        yes_pred.push_back(parsed.yes);
        yes_ref.push_back(t.answer);
        bd.correct += parsed.yes && *parsed.yes == t.answer;
        break;
      }
      case QaType::kIV: {
        const auto c = cot_consistency(q, parsed.cot);
        ++r.cot_consistency[consistency_name(c)];
        const bool ok =
            c == Consistency::kConsistent || c == Consistency::kFinalOnly;
        bd.correct += ok;
        cot_final += ok;
        ++cot_n;
        break;
      }
    }
  }

  if (r.n_graded == 0) throw Error("no gradable records");
  if (r.n_unresolved * 2 > r.n_predictions)
    r.warnings.push_back(std::to_string(r.n_unresolved) + " of " +
                         std::to_string(r.n_predictions) +
                         " predictions reference unknown qa_ids");
  if (r.n_duplicates > 0)
    r.warnings.push_back(std::to_string(r.n_duplicates) +
                         " duplicate predictions ignored");

  if (!t1_scores.empty()) {
    const auto n = static_cast<Index>(t1_scores.size());
    const auto k = static_cast<Index>(vocab.size());
    Eigen::MatrixXd s(n, k);
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> y(n, k);
    for (Index i = 0; i < n; ++i)
      for (Index c = 0; c < k; ++c) {
        s(i, c) = t1_scores[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
        y(i, c) = t1_truth[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      }
    try {
      const auto m = mean_average_precision(s, y);
      r.map = Metric{m.map, t1_scores.size()};
      r.map_excluded_classes = m.n_excluded;
    } catch (const Error& e) {
      r.warnings.push_back(std::string("mAP not computed: ") + e.what());
    }
  }
  if (!doa_pred.empty()) {
    const auto m = doa_error_metrics(doa_pred, doa_ref);
    r.mae_deg = Metric{m.mae_deg, m.n};
    r.er20 = Metric{m.er20, m.n};
    r.der = Metric{distance_error_rate(dist_pred, dist_ref), dist_pred.size()};
    if (options.sector_12)
      r.sector_acc_12 = Metric{
          sector_accuracy(hour_pred, hour_ref, SectorProtocol::k12Bin),
          hour_pred.size()};
    if (options.sector_4)
      r.sector_acc_4 = Metric{
          sector_accuracy(hour_pred, hour_ref, SectorProtocol::k4Bin),
          hour_pred.size()};
  }
  if (!yes_pred.empty()) {
    std::vector<char> refs(yes_ref.begin(), yes_ref.end());
    std::unique_ptr<bool[]> flags(new bool[refs.size()]);
    for (std::size_t i = 0; i < refs.size(); ++i) flags[i] = refs[i];
    r.ba = Metric{binary_accuracy(yes_pred, {flags.get(), refs.size()}),
                  yes_pred.size()};
  }
  if (cot_n > 0)
    r.cot_final_acc = Metric{static_cast<double>(cot_final) / cot_n, cot_n};
  return r;
}

namespace {

void put(nlohmann::json& j, const char* key, const std::optional<Metric>& m) {
  if (m)
    j[key] = {{"value", m->value}, {"n", m->n}};
  else
    j[key] = nullptr;
}

}  // namespace

nlohmann::json MetricsReport::to_json() const {
  nlohmann::json j;
  put(j, "map", map);
  put(j, "mae_deg", mae_deg);
  put(j, "er20", er20);
  put(j, "der", der);
  put(j, "ba", ba);
  put(j, "sector_acc_12", sector_acc_12);
  put(j, "sector_acc_4", sector_acc_4);
  put(j, "cot_final_acc", cot_final_acc);
  j["map_excluded_classes"] = map_excluded_classes;
  j["cot_consistency"] = cot_consistency;
  nlohmann::json types = nlohmann::json::object();
  for (const auto& [k, b] : per_type)
    types[k] = {{"n", b.n}, {"fully_parsed", b.fully_parsed},
                {"correct", b.correct}};
  j["per_type"] = types;
  j["n_predictions"] = n_predictions;
  j["n_graded"] = n_graded;
  j["n_unresolved"] = n_unresolved;
  j["n_duplicates"] = n_duplicates;
  j["warnings"] = warnings;
  return j;
}

std::string MetricsReport::to_table() const {
  std::ostringstream os;
  char buf[128];
  auto row = [&](const char* name, const std::optional<Metric>& m) {
    if (m)
      std::snprintf(buf, sizeof buf, "%-16s %10.4f %8zu\n", name, m->value, m->n);
    else
      std::snprintf(buf, sizeof buf, "%-16s %10s %8s\n", name, "-", "0");
    os << buf;
  };
  std::snprintf(buf, sizeof buf, "%-16s %10s %8s\n", "metric", "value", "n");
  os << buf;
  row("mAP", map);
  row("MAE (deg)", mae_deg);
  row("ER20", er20);
  row("DER", der);
  row("BA", ba);
  row("sector acc 12", sector_acc_12);
  row("sector acc 4", sector_acc_4);
  row("CoT final acc", cot_final_acc);
  os << '\n';
  std::snprintf(buf, sizeof buf, "%-16s %8s %12s %8s\n", "qa_type", "n",
                "fully_parsed", "correct");
  os << buf;
  for (const auto& [k, b] : per_type) {
    std::snprintf(buf, sizeof buf, "%-16s %8zu %12zu %8zu\n", k.c_str(), b.n,
                  b.fully_parsed, b.correct);
    os << buf;
  }
  if (!cot_consistency.empty()) {
    os << '\n';
    for (const auto& [k, v] : cot_consistency) {
      std::snprintf(buf, sizeof buf, "%-16s %8zu\n", k.c_str(), v);
      os << buf;
    }
  }
  std::snprintf(buf, sizeof buf, "\npredictions %zu, graded %zu, unresolved %zu\n",
                n_predictions, n_graded, n_unresolved);
  os << buf;
  for (const auto& w : warnings) os << "warning: " << w << '\n';
  return os.str();
}

void write_report(const std::filesystem::path& stem, const MetricsReport& r) {
  auto json_path = stem;
  json_path += ".json";
  auto txt_path = stem;
  txt_path += ".txt";
  std::ofstream j(json_path);
  if (!j) throw Error("cannot write " + json_path.string());
  j << r.to_json().dump(2) << '\n';
  std::ofstream t(txt_path);
  if (!t) throw Error("cannot write " + txt_path.string());
  t << r.to_table();
}

}  // namespace roomqa::eval
