// Copyright 2026 The seldkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "seld/metrics.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "seld/error.h"

namespace seld {
namespace {

FrameDoas Single(int cls, AzEl dir, std::size_t frames = 1) {
  return FrameDoas(frames, {LabeledDoa{cls, AzElToUnit(dir)}});
}

TEST(SeldScore, AggregationIdentity) {
  struct Row {
    double er, f, le, lr, printed;
  };
  const Row rows[] = {{0.57, 29.9, 22.0, 47.7, 0.4791},
                      {0.58, 39.5, 20.0, 55.8, 0.4345},
                      {0.56, 42.7, 17.9, 62.0, 0.4019},
                      {0.54, 42.5, 18.7, 62.6, 0.3980},
                      {0.55, 42.8, 18.3, 62.1, 0.4007},
                      {0.54, 42.9, 17.9, 62.4, 0.3966},
                      {0.54, 44.0, 18.4, 64.5, 0.3891}};
  for (const Row& r : rows) {
    EXPECT_NEAR(SeldScore(r.er, r.f, r.le, r.lr), r.printed, 0.002);
  }
  EXPECT_NEAR(SeldScore(0.57, 29.9, 22.0, 47.7), 0.4791, 5e-5);
  EXPECT_EQ(SeldScore(0, 100, 0, 100), 0.0);
}

TEST(ComputeSeldMetrics, Perfect) {
  const FrameDoas ref = Single(2, {30, 10}, 20);
  const MetricsReport r = ComputeSeldMetrics(ref, ref);
  EXPECT_EQ(*r.er20, 0.0);
  EXPECT_EQ(*r.f20, 100.0);
  EXPECT_EQ(*r.le_cd, 0.0);
  EXPECT_EQ(*r.lr_cd, 100.0);
  EXPECT_EQ(*r.seld_score, 0.0);
}

TEST(ComputeSeldMetrics, TenDegreeOffset) {
  const MetricsReport r =
      ComputeSeldMetrics(Single(0, {10, 0}), Single(0, {0, 0}));
  EXPECT_EQ(*r.er20, 0.0);
  EXPECT_EQ(*r.f20, 100.0);
  EXPECT_NEAR(*r.le_cd, 10.0, 1e-12);
  EXPECT_EQ(*r.lr_cd, 100.0);
  EXPECT_NEAR(*r.seld_score, 10.0 / 180.0 / 4.0, 1e-12);
  EXPECT_NEAR(*r.seld_score, 0.0139, 5e-5);
}

TEST(ComputeSeldMetrics, ThirtyDegreeOffset) {
  const auto matches = MatchEvents(Single(0, {30, 0}), Single(0, {0, 0}));
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_FALSE(matches[0].within_threshold);
  const MetricsReport r =
      ComputeSeldMetrics(Single(0, {30, 0}), Single(0, {0, 0}));
  EXPECT_EQ(*r.er20, 1.0);  // one substitution
  EXPECT_EQ(*r.f20, 0.0);
  EXPECT_NEAR(*r.le_cd, 30.0, 1e-12);
  EXPECT_EQ(*r.lr_cd, 100.0);
}

TEST(ComputeSeldMetrics, DeletionOnly) {
  const MetricsReport r = ComputeSeldMetrics(FrameDoas(1), Single(0, {0, 0}));
  EXPECT_EQ(*r.er20, 1.0);
  EXPECT_EQ(*r.f20, 0.0);
  EXPECT_EQ(*r.lr_cd, 0.0);
  EXPECT_FALSE(r.le_cd.has_value());
  EXPECT_FALSE(r.seld_score.has_value());
  EXPECT_NE(r.ToKeyValue().find("le_cd=undefined"), std::string::npos);
}

TEST(ComputeSeldMetrics, EmptyInputs) {
  const MetricsReport r = ComputeSeldMetrics(FrameDoas(5), FrameDoas(5));
  EXPECT_EQ(*r.er20, 0.0);
  EXPECT_FALSE(r.f20.has_value());
  EXPECT_FALSE(r.lr_cd.has_value());
  const MetricsReport ins = ComputeSeldMetrics(Single(0, {0, 0}), FrameDoas(1));
  EXPECT_FALSE(ins.er20.has_value());
}

TEST(ComputeSeldMetrics, WrongClassIsNotMatched) {
  const MetricsReport r =
      ComputeSeldMetrics(Single(1, {0, 0}), Single(0, {0, 0}));
  EXPECT_EQ(*r.er20, 1.0);
  EXPECT_EQ(*r.f20, 0.0);
  EXPECT_EQ(*r.lr_cd, 0.0);
}

TEST(ComputeSeldMetrics, ErrorRateUsesSegments) {
  // Frame 0: deletion, frame 5: insertion; same 10-frame segment, so the
  // pair counts as one substitution.
  FrameDoas ref(10), pred(10);
  ref[0].push_back({0, AzElToUnit({0, 0})});
  pred[5].push_back({0, AzElToUnit({0, 0})});
  EXPECT_EQ(*ComputeSeldMetrics(pred, ref).er20, 1.0);
  // Different segments: one deletion plus one insertion.
  FrameDoas ref2(20), pred2(20);
  ref2[0].push_back({0, AzElToUnit({0, 0})});
  pred2[15].push_back({0, AzElToUnit({0, 0})});
  EXPECT_EQ(*ComputeSeldMetrics(pred2, ref2).er20, 2.0);
}

TEST(ComputeSeldMetrics, FromClipLabels) {
  ClipLabels ref(6, 4, 13), pred(6, 4, 13);
  ref.SetEvent(0, 1, 3, AzElToUnit({0, 0}));
  pred.SetEvent(4, 1, 3, AzElToUnit({5, 0}));
  const MetricsReport r = ComputeSeldMetrics(pred, ref);
  EXPECT_EQ(*r.f20, 100.0);
  EXPECT_NEAR(*r.le_cd, 5.0, 1e-12);
}

TEST(ComputeSeldMetrics, RejectsBadClass) {
  EXPECT_THROW(ComputeSeldMetrics(Single(13, {0, 0}), Single(0, {0, 0})),
               Error);
}

TEST(ComputeSeldMetrics, MatchesCountingOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    FrameDoas pred, ref;
    testing::RandomScenario(rng, 1 + trial % 20, 1 + trial % 3, pred, ref);
    MetricsConfig cfg;
    cfg.classes = 1 + trial % 3;
    const MetricsReport r = ComputeSeldMetrics(pred, ref, cfg);
    const auto o = testing::CountingOracle(pred, ref, cfg.classes, 20.0, 10);
    ASSERT_EQ(r.er20, o.er);
    ASSERT_EQ(r.f20, o.f);
    ASSERT_EQ(r.le_cd, o.le);
    ASSERT_EQ(r.lr_cd, o.lr);
  }
}

TEST(CountSeld, AdditiveOverClips) {
  std::mt19937_64 rng(32);
  FrameDoas p1, r1, p2, r2;
  testing::RandomScenario(rng, 10, 3, p1, r1);
  testing::RandomScenario(rng, 10, 3, p2, r2);
  MetricsConfig cfg;
  cfg.classes = 3;
  SeldCounts sum = CountSeld(p1, r1, cfg);
  sum += CountSeld(p2, r2, cfg);
  FrameDoas pj = p1, rj = r1;
  pj.insert(pj.end(), p2.begin(), p2.end());
  rj.insert(rj.end(), r2.begin(), r2.end());
  const SeldCounts joint = CountSeld(pj, rj, cfg);
  EXPECT_EQ(sum.substitutions, joint.substitutions);
  EXPECT_EQ(sum.deletions, joint.deletions);
  EXPECT_EQ(sum.insertions, joint.insertions);
  EXPECT_EQ(sum.ref_total, joint.ref_total);
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_EQ(sum.per_class[c].tp, joint.per_class[c].tp);
  }
}

TEST(ComputeSeldMetrics, RotationInvariant) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    FrameDoas pred, ref;
    testing::RandomScenario(rng, 10, 2, pred, ref);
    FrameDoas rp = pred, rr = ref;
    for (auto* f : {&rp, &rr}) {
      for (auto& frame : *f) {
        for (auto& d : frame) d.direction = RotateAboutZ(d.direction, 33.0);
      }
    }
    MetricsConfig cfg;
    cfg.classes = 2;
    // Keep away from exact-threshold pairs, which rotation can flip by one ulp.
    cfg.threshold_deg = 21.0;
    const MetricsReport a = ComputeSeldMetrics(pred, ref, cfg);
    const MetricsReport b = ComputeSeldMetrics(rp, rr, cfg);
    ASSERT_EQ(a.er20, b.er20);
    ASSERT_EQ(a.f20, b.f20);
    ASSERT_EQ(a.lr_cd.has_value(), b.lr_cd.has_value());
    if (a.le_cd) ASSERT_NEAR(*a.le_cd, *b.le_cd, 1e-9);
  }
}

TEST(ComputeSeldMetrics, AddingTruePositiveNeverHurts) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    FrameDoas pred, ref;
    testing::RandomScenario(rng, 5, 2, pred, ref);
    MetricsConfig cfg;
    cfg.classes = 2;
    const MetricsReport before = ComputeSeldMetrics(pred, ref, cfg);
    const LabeledDoa extra{1, AzElToUnit({77, 33})};
    pred[2].push_back(extra);
    ref[2].push_back(extra);
    const MetricsReport after = ComputeSeldMetrics(pred, ref, cfg);
    if (before.f20) ASSERT_GE(*after.f20 + 1e-12, *before.f20);
    if (before.lr_cd) ASSERT_GE(*after.lr_cd + 1e-12, *before.lr_cd);
  }
}

TEST(DoaMetrics, PerfectAndHalfMissed) {
  const FrameDoas ref = Single(0, {0, 0}, 10);
  DoaMetrics m = ComputeDoaMetrics(ref, ref);
  EXPECT_EQ(m.acc, 100.0);
  EXPECT_EQ(m.mdr, 0.0);
  EXPECT_EQ(*m.mae, 0.0);
  FrameDoas pred(10);
  for (std::size_t t = 0; t < 5; ++t) pred[t].push_back({5, AzElToUnit({5, 0})});
  m = ComputeDoaMetrics(pred, ref);
  EXPECT_EQ(m.acc, 50.0);
  EXPECT_EQ(m.mdr, 50.0);
  EXPECT_NEAR(*m.mae, 5.0, 1e-12);
  try {
    ComputeDoaMetrics(pred, FrameDoas(10));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefinedMetric);
  }
}

TEST(SegmentFMacro, Cases) {
  ClassActivity ref(10, 2), pred(10, 2);
  for (std::size_t t = 0; t < 10; ++t) {
    ref.at(t, 0) = 1.0;
    ref.at(t, 1) = t < 5 ? 1.0 : 0.0;
    pred.at(t, 0) = 1.0;
  }
  EXPECT_EQ(SegmentFMacro(ref, ref), 1.0);
  EXPECT_EQ(SegmentFMacro(pred, ref), 0.5);
  ClassActivity empty(10, 2);
  EXPECT_THROW(SegmentFMacro(pred, empty), Error);
  // Collapsed trackwise probabilities feed in directly.
  ClipLabels l(2, 10, 2);
  for (std::size_t t = 0; t < 10; ++t) l.set_class_prob(1, t, 0, 0.8);
  for (std::size_t t = 0; t < 5; ++t) l.set_class_prob(0, t, 1, 0.6);
  EXPECT_EQ(SegmentFMacro(CollapseTracks(l), ref), 1.0);
}

TEST(MetricsReport, Serialization) {
  MetricsReport r;
  r.er20 = 0.5;
  r.f20 = 40.0;
  const std::string kv = r.ToKeyValue();
  EXPECT_NE(kv.find("er20=0.500000\n"), std::string::npos);
  EXPECT_NE(kv.find("seld_score=undefined\n"), std::string::npos);
  EXPECT_EQ(MetricsReport::CsvHeader(),
            "er20,f20,le_cd,lr_cd,seld_score,acc,mdr,mae,f_macro\n");
  EXPECT_EQ(r.ToCsvRow().substr(0, 19), "0.500000,40.000000,");
}

}  // namespace
}  // namespace seld
