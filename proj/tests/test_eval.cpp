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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "roomqa/corpus/qa.hpp"
#include "roomqa/corpus/render.hpp"
#include "roomqa/eval/metrics.hpp"
#include "roomqa/eval/parse.hpp"
#include "roomqa/eval/report.hpp"
#include "support.hpp"

using namespace roomqa;
using namespace roomqa::eval;
using corpus::Axis;
using corpus::CotTruth;
using corpus::CotVariant;
using corpus::QaPair;
using corpus::QaType;
using geometry::SphericalDoa;
using geometry::Vertical;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Sort by score descending, negatives before positives on ties, then walk.
double ap_oracle(const std::vector<double>& s, const std::vector<bool>& t) {
  std::vector<std::size_t> idx(s.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      const auto a = idx[i], b = idx[j];
      const bool swap = s[b] > s[a] || (s[b] == s[a] && !t[b] && t[a]);
      if (swap) std::swap(idx[i], idx[j]);
    }
  double sum = 0.0;
  int hits = 0;
  for (std::size_t r = 0; r < idx.size(); ++r)
    if (t[idx[r]]) sum += static_cast<double>(++hits) / static_cast<double>(r + 1);
  return sum / hits;
}

std::vector<bool> as_vec(std::span<const bool> s) { return {s.begin(), s.end()}; }

SphericalDoa random_direction(Rng& rng) {
  return {rng.uniform(0, 360), rad2deg(std::acos(rng.uniform(-1, 1))), 1.0};
}

corpus::SampleRecord make_sample(Rng& rng, const std::string& id,
                                 const std::vector<std::vector<std::string>>& labels) {
  scene::SceneSpec sc;
  sc.room.dims = Vec3(30, 30, 24);
  sc.room.room_id = "room";
  sc.receiver = geometry::Pose(Vec3(15, 15, 12), rng.uniform(0, 6));
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const Vec3 d(rng.uniform(-7, 7), rng.uniform(-7, 7), rng.uniform(-5, 5));
    sc.sources.push_back({sc.receiver.position() + d, "c" + std::to_string(k), labels[k]});
  }
  corpus::SampleRecord r;
  r.sample_id = id;
  r.scene = sc;
  r.sources = corpus::derive_truth(sc);
  return r;
}

QaPair cot_pair(Axis axis, CotVariant v, std::array<std::string, 2> names,
                std::array<int, 2> hours,
                std::array<Vertical, 2> verts = {Vertical::kUp, Vertical::kUp}) {
  QaPair q;
  q.qa_id = "q-IV-0";
  q.sample_id = "q";
  q.type = QaType::kIV;
  CotTruth t;
  t.axis = axis;
  t.variant = v;
  t.names = names;
  t.clock_hours = hours;
  t.verticals = verts;
  q.truth = t;
  return q;
}

const std::vector<std::string> kVocab = {"Speech", "Dog", "Animal", "Siren", "Bicycle",
                                         "Bicycle bell", "Wheeze", "Sawing", "Waterfall"};

}  // namespace

TEST_CASE("average precision examples") {
  const std::vector<double> s = {0.9, 0.8, 0.7};
  const bool t[] = {false, true, true};
  CHECK_THAT(average_precision(s, t), WithinAbs(0.5 * (0.5 + 2.0 / 3.0), 1e-12));
  CHECK_THAT(average_precision(s, t), WithinAbs(0.5833, 1e-4));
  const bool perfect[] = {true, true, false};
  CHECK(average_precision(s, perfect) == 1.0);
  const bool none[] = {false, false, false};
  CHECK_THROWS_WITH(average_precision(s, none), "no positives");
}

TEST_CASE("average precision matches the brute-force oracle") {
  Rng rng(71);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(20);
    std::vector<double> s(n);
    std::unique_ptr<bool[]> t(new bool[n]);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.below(5));  // many ties
      t[i] = rng.bernoulli(0.4);
      any = any || t[i];
    }
    if (!any) t[0] = true;
    const std::span<const bool> ts(t.get(), n);
    CHECK_THAT(average_precision(s, ts), WithinAbs(ap_oracle(s, as_vec(ts)), 1e-12));
  }
}

TEST_CASE("average precision of random scores tracks the base rate") {
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    std::vector<double> s(1000);
    std::unique_ptr<bool[]> t(new bool[1000]);
    for (int i = 0; i < 1000; ++i) {
      s[static_cast<std::size_t>(i)] = rng.uniform();
      t[i] = i % 10 == 0;
    }
    const double ap = average_precision(s, std::span<const bool>(t.get(), 1000));
    CHECK(std::abs(ap - 0.1) < 0.05);
    sum += ap;
  }
  CHECK(std::abs(sum / 20 - 0.1) < 0.02);
}

TEST_CASE("mean average precision excludes classes without positives") {
  Eigen::MatrixXd s(3, 3);
  s << 0.9, 0.1, 0.5, 0.8, 0.2, 0.5, 0.7, 0.3, 0.5;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> t(3, 3);
  t << false, true, false, true, false, false, true, false, false;
  const auto r = mean_average_precision(s, t);
  CHECK(r.n_classes == 2);
  CHECK(r.n_excluded == 1);
  CHECK_THAT(r.map, WithinAbs((0.5 * (0.5 + 2.0 / 3.0) + 1.0 / 3.0) / 2.0, 1e-12));
  t.setConstant(false);
  CHECK_THROWS_WITH(mean_average_precision(s, t), "no positives");
}

TEST_CASE("DoA error metrics") {
  const std::vector<SphericalDoa> refs = {{0, 90, 1}, {100, 90, 1}};
  std::vector<std::optional<SphericalDoa>> exact = {refs[0], refs[1]};
  auto m = doa_error_metrics(exact, refs);
  CHECK_THAT(m.mae_deg, WithinAbs(0.0, 1e-6));
  CHECK(m.er20 == 0.0);
  std::vector<std::optional<SphericalDoa>> off = {SphericalDoa{10, 90, 1}, SphericalDoa{130, 90, 1}};
  m = doa_error_metrics(off, refs);
  CHECK_THAT(m.mae_deg, WithinAbs(20.0, 1e-9));
  CHECK(m.er20 == 0.5);
  CHECK(m.n == 2);
  std::vector<std::optional<SphericalDoa>> missing = {std::nullopt, refs[1]};
  m = doa_error_metrics(missing, refs);
  CHECK_THAT(m.mae_deg, WithinAbs(90.0, 1e-6));
  CHECK_THROWS_WITH(doa_error_metrics({}, {}), "empty set");
}

TEST_CASE("ER20 of random directions matches the spherical cap") {
  Rng rng(72);
  std::vector<std::optional<SphericalDoa>> preds;
  std::vector<SphericalDoa> refs;
  for (int i = 0; i < 10000; ++i) {
    preds.push_back(random_direction(rng));
    refs.push_back({30.0 * (i % 12), 90.0, 1.0});
  }
  const double expected = 1.0 - (1.0 - std::cos(deg2rad(20.0))) / 2.0;
  CHECK_THAT(doa_error_metrics(preds, refs).er20, WithinAbs(expected, 0.01));
}

TEST_CASE("ER20 and DER match brute-force counting") {
  Rng rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(20);
    std::vector<std::optional<SphericalDoa>> p;
    std::vector<SphericalDoa> r;
    std::vector<std::optional<double>> pd;
    std::vector<double> rd;
    int er = 0, de = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = random_direction(rng);
      auto b = a;
      b.azimuth_deg = std::fmod(a.azimuth_deg + rng.uniform(0, 60), 360.0);
      r.push_back(a);
      p.push_back(b);
      if (geometry::angular_error(a, b) > 20.0) ++er;
      const double d = static_cast<double>(rng.below(20)) * 0.25;  // exact in binary
      const double e = static_cast<double>(rng.below(5)) * 0.25;  // hits 0.5 exactly
      rd.push_back(d);
      if (rng.bernoulli(0.1)) {
        pd.push_back(std::nullopt);
        ++de;
      } else {
        pd.push_back(d + e);
        if (std::abs(e) > 0.5) ++de;
      }
    }
    CHECK_THAT(doa_error_metrics(p, r).er20, WithinAbs(static_cast<double>(er) / n, 1e-12));
    CHECK_THAT(distance_error_rate(pd, rd), WithinAbs(static_cast<double>(de) / n, 1e-12));
  }
}

TEST_CASE("distance error rate examples") {
  const std::vector<double> ref = {1.0, 1.0, 1.0};
  std::vector<std::optional<double>> p = {1.4, 1.5, 1.6};
  CHECK_THAT(distance_error_rate(p, ref), WithinAbs(1.0 / 3.0, 1e-12));
  std::vector<std::optional<double>> close = {1.25, 0.75, 1.0};
  CHECK(distance_error_rate(close, ref) == 0.0);
  std::vector<std::optional<double>> none(3);
  CHECK(distance_error_rate(none, ref) == 1.0);
  CHECK_THROWS_WITH(distance_error_rate({}, {}), "empty set");
}

TEST_CASE("binary accuracy examples and brute force") {
  std::vector<std::optional<bool>> p = {true, false, true};
  const bool r[] = {true, true, true};
  CHECK_THAT(binary_accuracy(p, r), WithinAbs(2.0 / 3.0, 1e-12));
  std::vector<std::optional<bool>> all = {true, true, true};
  CHECK(binary_accuracy(all, r) == 1.0);
  std::vector<std::optional<bool>> miss = {std::nullopt, true, true};
  CHECK_THAT(binary_accuracy(miss, r), WithinAbs(2.0 / 3.0, 1e-12));
  CHECK_THROWS_WITH(binary_accuracy({}, {}), "empty set");
}

TEST_CASE("sector accuracy protocols") {
  const int r12[] = {12};
  std::vector<std::optional<int>> p12 = {12};
  CHECK(sector_accuracy(p12, r12, SectorProtocol::k12Bin) == 1.0);
  CHECK(sector_accuracy(p12, r12, SectorProtocol::k4Bin) == 1.0);
  const int r11[] = {11};
  std::vector<std::optional<int>> p1 = {1};
  CHECK(sector_accuracy(p1, r11, SectorProtocol::k12Bin) == 0.0);
  CHECK(sector_accuracy(p1, r11, SectorProtocol::k4Bin) == 1.0);
  const int r9[] = {9};
  std::vector<std::optional<int>> p3 = {3};
  CHECK(sector_accuracy(p3, r9, SectorProtocol::k12Bin) == 0.0);
  CHECK(sector_accuracy(p3, r9, SectorProtocol::k4Bin) == 0.0);
}

TEST_CASE("metric properties on random prediction sets") {
  Rng rng(74);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(30);
    std::vector<std::optional<int>> p;
    std::vector<int> r;
    for (std::size_t i = 0; i < n; ++i) {
      p.push_back(rng.bernoulli(0.1) ? std::nullopt
                                     : std::optional<int>(1 + static_cast<int>(rng.below(12))));
      r.push_back(1 + static_cast<int>(rng.below(12)));
    }
    const double a12 = sector_accuracy(p, r, SectorProtocol::k12Bin);
    const double a4 = sector_accuracy(p, r, SectorProtocol::k4Bin);
    CHECK(a12 <= a4);
    // permutation invariance
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    std::vector<std::optional<int>> pp;
    std::vector<int> rp;
    for (auto i : perm) {
      pp.push_back(p[i]);
      rp.push_back(r[i]);
    }
    CHECK(sector_accuracy(pp, rp, SectorProtocol::k12Bin) == a12);
    CHECK(sector_accuracy(pp, rp, SectorProtocol::k4Bin) == a4);
  }
}

TEST_CASE("sector centre convention") {
  const auto c = sector_center(12, Vertical::kUp);
  CHECK(c.azimuth_deg == 0.0);
  CHECK(c.elevation_deg == 45.0);
  const auto d = sector_center(3, Vertical::kDown);
  CHECK(d.azimuth_deg == 90.0);
  CHECK(d.elevation_deg == 135.0);
}

TEST_CASE("yes/no parsing") {
  CHECK(parse_yes_no("Yes") == true);
  CHECK(parse_yes_no("yes, it is on the left") == true);
  CHECK(parse_yes_no("No.") == false);
  CHECK(parse_yes_no("That is not correct") == false);
  CHECK(parse_yes_no("Correct.") == true);
  CHECK_FALSE(parse_yes_no("maybe"));
  CHECK_FALSE(parse_yes_no(""));
  CHECK_FALSE(parse_yes_no("Nothing here, yesterday")); // no whole-word match
}

TEST_CASE("class name matching") {
  CHECK(find_class_names("Bicycle; Bicycle bell", kVocab) ==
        std::vector<std::string>{"Bicycle", "Bicycle bell"});
  CHECK(find_class_names("i hear a bicycle bell and a DOG", kVocab) ==
        std::vector<std::string>{"Bicycle bell", "Dog"});
  CHECK(find_class_names("dogs barking", kVocab).empty());
}

TEST_CASE("Type IV parsing and consistency") {
  const auto lr = cot_pair(Axis::kLeftRight, CotVariant::kBothX, {"Wheeze", "Sawing"}, {8, 9});
  const std::string text =
      "Relative to the receiver, Wheeze and Sawing are detected at eight o' clock and nine "
      "o' clock. Thus, they both lie on the left.";
  const std::vector<std::string> names = {"Wheeze", "Sawing"};
  const auto parsed = parse_cot(text, Axis::kLeftRight, names);
  CHECK(parsed.both);
  CHECK(parsed.side == "left");
  REQUIRE(parsed.positions.size() == 2);
  CHECK(parsed.positions[0].clock_hour == 8);
  CHECK(cot_consistency(lr, parsed) == Consistency::kConsistent);

  const auto behind = cot_pair(Axis::kFrontBack, CotVariant::kBothY, {"Waterfall", "Engine"}, {6, 5});
  const std::vector<std::string> n2 = {"Waterfall", "Engine"};
  const auto slip = parse_cot(
      "Because Waterfall originates from seven o' clock and Engine from five o' clock, both "
      "sources are located at the back side.",
      Axis::kFrontBack, n2);
  CHECK(cot_consistency(behind, slip) == Consistency::kFinalOnly);
  const auto wrong = parse_cot(
      "Since Waterfall comes from six o' clock and Engine from five o' clock, Waterfall is in front.",
      Axis::kFrontBack, n2);
  CHECK(cot_consistency(behind, wrong) == Consistency::kInconsistent);
  CHECK(cot_consistency(behind, parse_cot("", Axis::kFrontBack, n2)) == Consistency::kUnparsed);

  const auto one = cot_pair(Axis::kUpDown, CotVariant::kOneY, {"Dog", "Siren"}, {3, 4},
                            {Vertical::kUp, Vertical::kDown});
  const std::vector<std::string> n3 = {"Dog", "Siren"};
  const auto good = parse_cot(
      "Dog is at three o' clock, up, while Siren is at four o' clock, down. Therefore, Siren is "
      "on the lower side.",
      Axis::kUpDown, n3);
  CHECK(good.entity == "Siren");
  CHECK(cot_consistency(one, good) == Consistency::kConsistent);
  const auto flipped = parse_cot(
      "Dog is at three o' clock, down, while Siren is at four o' clock, down. Therefore, Siren "
      "is on the lower side.",
      Axis::kUpDown, n3);
  CHECK(cot_consistency(one, flipped) == Consistency::kFinalOnly);

  QaPair not_cot;
  not_cot.type = QaType::kIII;
  not_cot.truth = corpus::RelationTruth{};
  CHECK_THROWS(cot_consistency(not_cot, parsed));
}

TEST_CASE("grading ground-truth answers is perfect") {
  Rng rng(75);
  std::vector<QaPair> qa;
  const auto bank = corpus::TemplateBank::defaults();
  std::vector<std::vector<std::string>> names = {{"Speech"}, {"Dog", "Animal"}, {"Siren"},
                                                 {"Bicycle", "Bicycle bell"}, {"Wheeze"}};
  for (int i = 0; i < 60; ++i) {
    std::vector<std::vector<std::string>> labels = {names[rng.below(names.size())]};
    if (i % 3) {
      auto other = names[rng.below(names.size())];
      while (other == labels[0]) other = names[rng.below(names.size())];
      labels.push_back(other);
    }
    const auto s = make_sample(rng, "s" + std::to_string(i), labels);
    for (auto& q : corpus::gen_qa_perception(s, rng, bank)) qa.push_back(q);
    for (auto& q : corpus::gen_qa_relational(s, rng, bank)) qa.push_back(q);
    for (auto& q : corpus::gen_qa_cot(s, rng, bank)) qa.push_back(q);
  }
  std::vector<Prediction> preds;
  for (const auto& q : qa) {
    Prediction p{q.qa_id, q.answer, {}};
    if (q.type == QaType::kI)
      for (const auto& c : std::get<corpus::PerceptionTruth>(q.truth).class_labels) p.scores[c] = 1.0;
    preds.push_back(p);
  }
  const auto r = grade(qa, preds);
  REQUIRE(r.ba);
  CHECK(r.ba->value == 1.0);
  CHECK(r.der->value == 0.0);
  CHECK(r.mae_deg->value == Catch::Approx(0.0).margin(1e-6));
  CHECK(r.er20->value == 0.0);
  CHECK(r.sector_acc_12->value == 1.0);
  CHECK(r.sector_acc_4->value == 1.0);
  CHECK(r.map->value == 1.0);
  CHECK(r.cot_final_acc->value == 1.0);
  CHECK(r.cot_consistency.at("consistent") == r.per_type.at("IV").n);
  CHECK(r.cot_consistency.size() == 1);
  for (const auto& [k, b] : r.per_type) {
    CHECK(b.correct == b.n);
    CHECK(b.fully_parsed == b.n);
  }
  CHECK(r.n_graded == qa.size());
  CHECK(r.warnings.empty());

  auto shuffled = preds;
  std::reverse(shuffled.begin(), shuffled.end());
  CHECK(grade(qa, shuffled).to_json() == r.to_json());

  const auto dir = testing::scratch_dir("report");
  write_report(dir / "report", r);
  CHECK(std::filesystem::exists(dir / "report.json"));
  std::ifstream txt(dir / "report.txt");
  std::string first;
  std::getline(txt, first);
  CHECK_FALSE(first.empty());
}

TEST_CASE("constant-Yes on a balanced Type III corpus") {
  Rng rng(76);
  std::vector<QaPair> cands;
  for (int i = 0; i < 500; ++i) {
    const auto s = make_sample(rng, "s" + std::to_string(i), {{"Dog"}, {"Siren"}});
    for (auto& q : corpus::gen_qa_relational(s, rng, corpus::TemplateBank::defaults()))
      cands.push_back(q);
  }
  const auto qa = corpus::balance_relational(cands, 1500, 3);
  REQUIRE(qa.size() >= 1000);
  std::vector<Prediction> preds;
  for (const auto& q : qa) preds.push_back({q.qa_id, "Yes", {}});
  const auto r = grade(qa, preds);
  CHECK_THAT(r.ba->value, WithinAbs(0.5, 0.02));
  CHECK(r.ba->n == qa.size());
}

TEST_CASE("grading edge cases") {
  Rng rng(77);
  const auto s = make_sample(rng, "s1", {{"Speech"}});
  auto qa = corpus::gen_qa_perception(s, rng, corpus::TemplateBank::defaults());
  CHECK_THROWS_WITH(grade(qa, {}), "no records");
  CHECK_THROWS_WITH(grade(qa, {{"nope", "x", {}}}), "no gradable records");

  std::vector<Prediction> preds = {{qa[1].qa_id, "somewhere left", {}},
                                   {qa[1].qa_id, "again", {}},
                                   {"ghost", "x", {}}};
  const auto r = grade(qa, preds);
  CHECK(r.n_duplicates == 1);
  CHECK(r.n_unresolved == 1);
  CHECK(r.der->value == 1.0);
  CHECK(r.mae_deg->value == 180.0);
  CHECK(r.sector_acc_12->value == 0.0);

  const auto parsed = parse_prediction({qa[1].qa_id, "somewhere left", {}}, qa[1], kVocab);
  CHECK(parsed.missing.size() == 3);

  const auto dir = testing::scratch_dir("preds");
  std::ofstream(dir / "p.jsonl") << R"({"qa_id": "a", "raw_text": "Yes", "scores": {"Dog": 0.5}})"
                                 << "\n" << R"({"raw_text": "x"})" << "\n";
  CHECK_THROWS(read_predictions(dir / "p.jsonl"));
  std::ofstream(dir / "q.jsonl") << R"({"qa_id": "a", "raw_text": "Yes", "scores": {"Dog": 0.5}})" << "\n";
  const auto ok = read_predictions(dir / "q.jsonl");
  REQUIRE(ok.size() == 1);
  CHECK(ok[0].scores.at("Dog") == 0.5);
}
