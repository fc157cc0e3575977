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

#include "seld/doa_oracle.h"

#include <cmath>

#include <gtest/gtest.h>

#include "seld/dsp.h"
#include "seld/error.h"
#include "seld/scene_sim.h"

namespace seld {
namespace {

struct Features {
  FeatureTensor logmel;
  FeatureTensor iv;
};

Features Analyze(const SceneConfig& scene) {
  const SpectralTensor spec = Stft(EncodeFoa(scene));
  return {LogMel(spec), IntensityVectors(spec)};
}

SceneConfig Scene(AzEl dir, std::optional<double> snr = std::nullopt) {
  SceneConfig s;
  s.duration_s = 5.0;
  s.seed = 21;
  s.noise_snr_db = snr;
  EventSpec e;
  e.onset_s = 0.5;
  e.offset_s = 4.5;
  e.trajectory = {{0.5, dir}};
  s.events.push_back(e);
  return s;
}

TEST(EstimateDoaIv, NoiseFreeStaticSource) {
  for (AzEl dir : {AzEl{0, 0}, AzEl{40, 10}, AzEl{-150, -35}, AzEl{95, 70}}) {
    const Features f = Analyze(Scene(dir));
    const ClipLabels est = EstimateDoaIv(f.iv, f.logmel);
    ASSERT_EQ(est.num_tracks(), 1u);
    ASSERT_EQ(est.num_frames(), 50u);
    int active = 0;
    for (std::size_t t = 0; t < 50; ++t) {
      if (!est.active(0, t)) {
        EXPECT_TRUE(t < 5 || t >= 45) << t;
        continue;
      }
      ++active;
      EXPECT_NEAR(est.direction(0, t).Norm(), 1.0, 1e-12);
      ASSERT_LT(AngularDistance(est.direction(0, t), AzElToUnit(dir)), 0.06);
    }
    EXPECT_GE(active, 40);
  }
}

TEST(EstimateDoaIv, SilentClipIsInactive) {
  SceneConfig s;
  s.duration_s = 2.0;
  const Features f = Analyze(s);
  const ClipLabels est = EstimateDoaIv(f.iv, f.logmel);
  EXPECT_EQ(est.num_frames(), 20u);
  for (std::size_t t = 0; t < 20; ++t) {
    EXPECT_FALSE(est.active(0, t));
    EXPECT_TRUE(est.direction(0, t).IsInactive());
  }
}

TEST(EstimateDoaIv, TenDbSnr) {
  const AzEl dir{-70, 20};
  const Features f = Analyze(Scene(dir, 10.0));
  const ClipLabels est = EstimateDoaIv(f.iv, f.logmel);
  double sum = 0.0;
  int n = 0;
  for (std::size_t t = 5; t < 45; ++t) {
    ASSERT_TRUE(est.active(0, t));
    sum += AngularDistance(est.direction(0, t), AzElToUnit(dir));
    ++n;
  }
  EXPECT_LT(sum / n, 5.0);
}

TEST(EstimateDoaIv, RotationEquivariance) {
  const AzEl dir{30, 15};
  const double phi = 77.0;
  const Features a = Analyze(Scene(dir));
  const Features b = Analyze(Scene({dir.azimuth + phi, dir.elevation}));
  const ClipLabels ea = EstimateDoaIv(a.iv, a.logmel);
  const ClipLabels eb = EstimateDoaIv(b.iv, b.logmel);
  for (std::size_t t = 5; t < 45; ++t) {
    ASSERT_LT(AngularDistance(RotateAboutZ(ea.direction(0, t), phi),
                              eb.direction(0, t)),
              0.1);
  }
}

TEST(EstimateDoaIv, Options) {
  const Features f = Analyze(Scene({0, 0}));
  DoaOracleOptions opts;
  opts.label_frames = 60;
  EXPECT_EQ(EstimateDoaIv(f.iv, f.logmel, opts).num_frames(), 60u);
  opts.frames_per_label = 0;
  EXPECT_THROW(EstimateDoaIv(f.iv, f.logmel, opts), Error);
}

TEST(EstimateDoaIv, ShapeMismatch) {
  const Features f = Analyze(Scene({0, 0}));
  FeatureTensor shorter(FeatureLayout::kLogMel, 4, f.logmel.frames - 1, 64);
  try {
    EstimateDoaIv(f.iv, shorter);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShape);
  }
}

}  // namespace
}  // namespace seld
