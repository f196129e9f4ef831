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

#include <cmath>

#include "roomqa/acoustics/descriptors.hpp"
#include "roomqa/acoustics/edc.hpp"
#include "roomqa/acoustics/losses.hpp"
#include "roomqa/acoustics/rir.hpp"
#include "support.hpp"

using namespace roomqa;
using namespace roomqa::acoustics;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> cumsum_oracle(const Signal<double>& r) {
  std::vector<double> out(static_cast<std::size_t>(r.size()), 0.0);
  double acc = 0.0;
  for (Index t = r.size() - 1; t >= 0; --t) {
    acc += r[t] * r[t];
    out[static_cast<std::size_t>(t)] = acc;
  }
  return out;
}

double edc_loss_oracle(const std::vector<double>& p, const std::vector<double>& r,
                       double eps) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    s += std::abs(10.0 * std::log10(p[i] + eps) - 10.0 * std::log10(r[i] + eps));
  return s / static_cast<double>(p.size());
}

Signal<double> decaying_noise(Rng& rng, double tau, int sr, double seconds) {
  const Index n = static_cast<Index>(seconds * sr);
  Signal<double> r(n);
  for (Index i = 0; i < n; ++i)
    r[i] = std::exp(-static_cast<double>(i) / sr / tau) * rng.normal();
  return r;
}

HeadLogits uniform_heads(Index classes) {
  return {Eigen::VectorXd::Zero(classes), Eigen::VectorXd::Zero(kDistanceBins),
          Eigen::VectorXd::Zero(kAzimuthBins), Eigen::VectorXd::Zero(kElevationBins)};
}

}  // namespace

TEST_CASE("schroeder_edc small cases") {
  Signal<double> a(3), b(2);
  a << 1, 0, 0;
  b << 1, 1;
  const auto ea = schroeder_edc(a, 16000).energy;
  const auto eb = schroeder_edc(b, 16000).energy;
  CHECK(ea[0] == 1.0);
  CHECK(ea[1] == 0.0);
  CHECK(ea[2] == 0.0);
  CHECK(eb[0] == 2.0);
  CHECK(eb[1] == 1.0);
  CHECK_THROWS_WITH(schroeder_edc(Signal<double>(0), 16000), "empty channel");
}

TEST_CASE("schroeder_edc matches the reversed cumulative sum") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto r = testing::random_signal(rng, 64);
    const auto e = schroeder_edc(r, 32000).energy;
    const auto ref = cumsum_oracle(r);
    for (Index t = 0; t < 64; ++t) CHECK(e[t] == ref[static_cast<std::size_t>(t)]);
    CHECK_THAT(e[0], WithinRel(r.square().sum(), 1e-12));
  }
}

TEST_CASE("schroeder_edc is monotone non-increasing") {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 1 + static_cast<Index>(static_cast<Index>(rng.below(500 + 1)));
    const auto r = testing::random_signal(rng, n, rng.uniform(0.01, 10.0));
    const auto e = schroeder_edc(r, 32000).energy;
    for (Index t = 1; t < n; ++t) CHECK(e[t] <= e[t - 1]);
  }
}

TEST_CASE("RT60 of exponentially decaying noise") {
  const int sr = 32000;
  for (double tau : {0.03, 0.05, 0.1}) {
    Rng rng(23);
    const auto r = decaying_noise(rng, tau, sr, 12.0 * tau);
    const double expected = 3.0 * std::log(10.0) * tau;
    CHECK_THAT(estimate_rt60(r, sr), WithinRel(expected, 0.05));
    CHECK_THAT(estimate_edt(r, sr), WithinRel(expected, 0.1));
  }
}

TEST_CASE("descriptors reject curves without enough decay") {
  Signal<double> tiny(4);
  tiny << 1, 1, 1, 1;
  CHECK_THROWS_WITH(estimate_rt60(tiny, 32000), "insufficient decay range");
  const auto rir = BinauralRir::from_channels(tiny, tiny, 32000);
  CHECK_THROWS_WITH(acoustic_descriptors(rir), "insufficient decay range");
  const auto partial = try_acoustic_descriptors(rir);
  CHECK_FALSE(partial[0].rt60_s.has_value());
  CHECK(partial[0].diagnostic == "insufficient decay range");
}

TEST_CASE("DRR sentinel for a delta impulse") {
  Signal<double> d = Signal<double>::Zero(1000);
  d[10] = 1.0;
  CHECK(direct_to_reverberant_db(d, 32000) == kDrrSentinelDb);
}

TEST_CASE("DRR direct window") {
  const int sr = 32000;
  Signal<double> r = Signal<double>::Zero(2000);
  r[100] = 1.0;
  r[100 + 80] = 0.5;   // inside +-2.5 ms (80 samples)
  r[100 + 81] = 0.25;  // outside
  const double expected = 10.0 * std::log10((1.0 + 0.25) / 0.0625);
  CHECK_THAT(direct_to_reverberant_db(r, sr), WithinRel(expected, 1e-12));
}

TEST_CASE("descriptors are invariant to global gain") {
  Rng rng(24);
  const auto l = decaying_noise(rng, 0.04, 32000, 0.5);
  const auto r = decaying_noise(rng, 0.06, 32000, 0.5);
  const auto a = acoustic_descriptors(BinauralRir::from_channels(l, r, 32000));
  for (double g : {1e-3, 0.5, 7.0}) {
    const Signal<double> gl = g * l, gr = g * r;
    const auto b = acoustic_descriptors(BinauralRir::from_channels(gl, gr, 32000));
    CHECK_THAT(b.left.rt60_s, WithinRel(a.left.rt60_s, 1e-9));
    CHECK_THAT(b.right.edt_s, WithinRel(a.right.edt_s, 1e-9));
    CHECK_THAT(b.left.drr_db, WithinAbs(a.left.drr_db, 1e-9));
  }
  CHECK(a.left.rt60_s > 0.0);
  CHECK(a.right.edt_s > 0.0);
  CHECK(std::isfinite(a.left.drr_db));
}

TEST_CASE("BinauralRir validation") {
  Signal<double> z = Signal<double>::Zero(10), o = Signal<double>::Ones(10);
  CHECK_THROWS(BinauralRir::from_channels(z, o, 32000).validate());
  CHECK_THROWS(BinauralRir::from_channels(o, Signal<double>::Ones(9), 32000));
  CHECK_NOTHROW(BinauralRir::from_channels(o, o, 32000).validate());
}

TEST_CASE("edc_loss examples and oracle") {
  Rng rng(25);
  const auto r = testing::random_signal(rng, 200);
  const auto ref = schroeder_edc(r, 32000).energy;
  CHECK(edc_loss(ref, ref) == 0.0);
  const Signal<double> big = ref + 1.0;
  CHECK_THAT(edc_loss(10.0 * big, big), WithinAbs(10.0, 1e-6));

  for (int trial = 0; trial < 20; ++trial) {
    const auto p = schroeder_edc(testing::random_signal(rng, 50), 32000).energy;
    const auto q = schroeder_edc(testing::random_signal(rng, 50), 32000).energy;
    std::vector<double> pv(p.data(), p.data() + 50), qv(q.data(), q.data() + 50);
    CHECK_THAT(edc_loss(p, q), WithinRel(edc_loss_oracle(pv, qv, kDefaultEdcEps), 1e-12));
    CHECK_THAT(edc_loss(p, q), WithinRel(edc_loss(q, p), 1e-12));
  }
  CHECK_THROWS_WITH(edc_loss(ref, ref.head(10)), "length mismatch");
}

TEST_CASE("geo_loss examples and oracle") {
  Rng rng(26);
  SampleMatrix<double> ref(2, 100);
  for (Index i = 0; i < ref.size(); ++i) ref.data()[i] = rng.normal();
  CHECK(geo_loss(ref, ref, 0.1) == 0.0);
  const SampleMatrix<double> shifted = ref + 0.1;
  CHECK_THAT(geo_loss(shifted, ref, 0.0), WithinAbs(0.1, 1e-12));

  SampleMatrix<double> pred(2, 100);
  for (Index i = 0; i < pred.size(); ++i) pred.data()[i] = rng.normal();
  double l1 = 0.0;
  for (Index i = 0; i < pred.size(); ++i) l1 += std::abs(pred.data()[i] - ref.data()[i]);
  l1 /= 200.0;
  double edc = 0.0;
  for (Index c = 0; c < 2; ++c) {
    const auto p = cumsum_oracle(pred.row(c).transpose());
    const auto q = cumsum_oracle(ref.row(c).transpose());
    edc += edc_loss_oracle(p, q, kDefaultEdcEps);
  }
  CHECK_THAT(geo_loss(pred, ref, 0.1), WithinRel(l1 + 0.1 * edc / 2.0, 1e-12));
  CHECK_THAT(geo_loss(pred, ref, 0.1), WithinRel(geo_loss(ref, pred, 0.1), 1e-12));
  CHECK_THROWS_WITH(geo_loss(pred, SampleMatrix<double>(2, 99), 0.1), "shape mismatch");
}

TEST_CASE("geo_loss_grad closed-form cases") {
  Rng rng(27);
  SampleMatrix<double> p(2, 30), r(2, 30);
  for (Index i = 0; i < p.size(); ++i) {
    p.data()[i] = rng.normal();
    r.data()[i] = rng.normal();
  }
  const auto g = geo_loss_grad(p, r, 0.0);
  for (Index i = 0; i < p.size(); ++i) {
    const double d = p.data()[i] - r.data()[i];
    CHECK(g.data()[i] == (d > 0 ? 1.0 : -1.0) / 60.0);
  }
  CHECK((geo_loss_grad(p, p, 0.1) == 0.0).all());
  CHECK_THROWS_WITH(geo_loss_grad(p, SampleMatrix<double>(1, 30), 0.1), "shape mismatch");
}

TEST_CASE("geo_loss_grad agrees with central differences") {
  Rng rng(28);
  int total = 0, agree = 0;
  for (int trial = 0; trial < 20; ++trial) {
    SampleMatrix<double> p(2, 24), r(2, 24);
    for (Index i = 0; i < p.size(); ++i) {
      r.data()[i] = rng.normal();
      p.data()[i] = r.data()[i] + rng.uniform(0.2, 1.0) * (rng.uniform() < 0.5 ? -1 : 1);
    }
    const auto g = geo_loss_grad(p, r, 0.1);
    for (Index i = 0; i < p.size(); ++i) {
      const double h = 1e-6;
      SampleMatrix<double> a = p, b = p;
      a.data()[i] += h;
      b.data()[i] -= h;
      const double fd = (geo_loss(a, r, 0.1) - geo_loss(b, r, 0.1)) / (2 * h);
      ++total;
      if (std::abs(fd - g.data()[i]) <= 1e-4 * std::max(std::abs(fd), 1e-3)) ++agree;
    }
  }
  CHECK(agree >= 0.95 * total);
}

TEST_CASE("binaural_loss on uniform logits") {
  auto logits = uniform_heads(5);
  HeadTargets t;
  t.event = Eigen::VectorXd::Zero(5);
  t.event[2] = 1.0;
  t.azimuth_bin = 17;
  t.elevation_bin = 90;
  LossWeights w;
  w.alpha = {0.0, 0.0, 1.0};
  CHECK_THAT(binaural_loss(logits, t, w), WithinAbs(11.0791, 1e-4));
  CHECK_THAT(binaural_loss(logits, t, w), WithinRel(std::log(360.0) + std::log(180.0), 1e-12));
}

TEST_CASE("binaural_loss on peaked logits goes to zero") {
  auto logits = uniform_heads(4);
  HeadTargets t;
  t.event = Eigen::VectorXd::Zero(4);
  t.event[1] = 1.0;
  t.distance_bin = 3;
  t.azimuth_bin = 200;
  t.elevation_bin = 10;
  const double m = 60.0;
  logits.event.setConstant(-m);
  logits.event[1] = m;
  logits.distance[3] = m;
  logits.azimuth[200] = m;
  logits.elevation[10] = m;
  CHECK(binaural_loss(logits, t, LossWeights{}) < 1e-12);
}

TEST_CASE("binaural_loss is additive over heads") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    auto logits = uniform_heads(6);
    for (auto* v : {&logits.event, &logits.distance, &logits.azimuth, &logits.elevation})
      for (Index i = 0; i < v->size(); ++i) (*v)[i] = rng.normal() * 3.0;
    HeadTargets t;
    t.event = Eigen::VectorXd::Zero(6);
    t.event[static_cast<Index>(rng.below(5 + 1))] = 1.0;
    t.distance_bin = static_cast<Index>(rng.below(20 + 1));
    t.azimuth_bin = static_cast<Index>(rng.below(359 + 1));
    t.elevation_bin = static_cast<Index>(rng.below(179 + 1));
    LossWeights w;
    w.alpha = {rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5)};
    const double joint = binaural_loss(logits, t, w);
    double parts = 0.0;
    LossWeights one;
    for (int k = 0; k < 3; ++k) {
      one.alpha = {0.0, 0.0, 0.0};
      one.alpha[k] = 1.0;
      parts += w.alpha[k] * binaural_loss(logits, t, one);
    }
    CHECK(joint == parts);
  }
}

TEST_CASE("binaural_loss range errors") {
  auto logits = uniform_heads(3);
  HeadTargets t;
  t.event = Eigen::VectorXd::Zero(3);
  t.azimuth_bin = 360;
  CHECK_THROWS_WITH(binaural_loss(logits, t, LossWeights{}), "target index out of range");
}

TEST_CASE("total_loss and default weights") {
  const LossWeights d;
  CHECK(d.alpha == std::array<double, 3>{1250.0, 1.0, 2.0});
  CHECK(d.eta == std::array<double, 2>{1.0, 0.01});
  CHECK(d.lambda_edc == 0.1);
  CHECK_THAT(total_loss(2.0, 5.0, d), WithinAbs(2.05, 1e-12));
  LossWeights a = d, b = d;
  a.eta = {1.0, 0.0};
  b.eta = {0.0, 1.0};
  CHECK(total_loss(2.0, 5.0, a) == 2.0);
  CHECK(total_loss(2.0, 5.0, b) == 5.0);
  b.eta = {0.0, 0.0};
  CHECK_THROWS(b.validate());
  a.alpha[1] = -1.0;
  CHECK_THROWS(a.validate());
  CHECK(LossWeights::audio_pretraining().alpha[0] == 1.0);
}
