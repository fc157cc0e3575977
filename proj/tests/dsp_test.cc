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

#include "seld/dsp.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "seld/error.h"
#include "seld/scene_sim.h"
#include "test_util.h"

namespace seld {
namespace {

AudioClip Sine(double hz, double seconds, int rate = 24000) {
  const std::size_t n = static_cast<std::size_t>(std::llround(seconds * rate));
  AudioClip clip(rate, 1, n);
  for (std::size_t i = 0; i < n; ++i) {
    clip.channels[0][i] = std::sin(2.0 * kPi * hz * double(i) / rate);
  }
  return clip;
}

AudioClip WhiteNoise(std::size_t channels, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  AudioClip clip(24000, channels, n);
  for (auto& ch : clip.channels) {
    for (double& v : ch) v = g(rng);
  }
  return clip;
}

template <typename F>
void ExpectCode(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(SecondsToSamples, WholeSamplesOnly) {
  EXPECT_EQ(SecondsToSamples(0.04, 24000), 960u);
  EXPECT_EQ(SecondsToSamples(0.02, 24000), 480u);
  EXPECT_EQ(SecondsToSamples(0.04, 22050), 882u);
  ExpectCode(ErrorCode::kConfiguration, [] { SecondsToSamples(0.0401, 24000); });
}

TEST(HannWindow, PeriodicAndOverlapAddsToOne) {
  const auto w = HannWindow(960);
  EXPECT_EQ(w[0], 0.0);
  EXPECT_NEAR(w[480], 1.0, 1e-15);
  for (std::size_t i = 0; i < 480; ++i) {
    ASSERT_NEAR(w[i] + w[i + 480], 1.0, 1e-12);
  }
}

TEST(Stft, SinePeaksAtBin40) {
  const SpectralTensor spec = Stft(Sine(1000.0, 1.0));
  EXPECT_EQ(spec.fft_size(), 960u);
  EXPECT_EQ(spec.bins(), 481u);
  EXPECT_DOUBLE_EQ(spec.bin_hz(1), 25.0);
  for (std::size_t t = 0; t < spec.frames(); ++t) {
    std::size_t best = 0;
    for (std::size_t f = 1; f < spec.bins(); ++f) {
      if (std::abs(spec.at(0, t, f)) > std::abs(spec.at(0, t, best))) best = f;
    }
    ASSERT_EQ(best, 40u);
  }
}

TEST(Stft, MatchesDirectDft) {
  const AudioClip clip = WhiteNoise(2, 4800, 3);
  const SpectralTensor spec = Stft(clip);
  const auto w = HannWindow(960);
  for (std::size_t ch = 0; ch < 2; ++ch) {
    for (std::size_t t : {0u, 3u, 8u}) {
      std::vector<double> frame(960);
      for (std::size_t i = 0; i < 960; ++i) {
        frame[i] = w[i] * clip.channels[ch][t * 480 + i];
      }
      const auto ref = testing::DirectDft(frame);
      for (std::size_t f = 0; f < ref.size(); ++f) {
        ASSERT_LT(std::abs(spec.at(ch, t, f) - ref[f]), 1e-9) << f;
      }
    }
  }
}

TEST(Stft, FrameCount) {
  AudioClip clip(24000, 1, 120000);
  const SpectralTensor spec = Stft(clip);
  EXPECT_EQ(spec.frames(), 249u);
  for (const auto& c : spec.data()) ASSERT_EQ(c, std::complex<double>(0.0));
  EXPECT_EQ(Stft(AudioClip(24000, 1, 960)).frames(), 1u);
  EXPECT_EQ(Stft(AudioClip(24000, 1, 1439)).frames(), 1u);
  EXPECT_EQ(Stft(AudioClip(24000, 1, 1440)).frames(), 2u);
}

TEST(Stft, Errors) {
  ExpectCode(ErrorCode::kInsufficientInput,
             [] { Stft(AudioClip(24000, 1, 959)); });
  ExpectCode(ErrorCode::kConfiguration,
             [] { Stft(AudioClip(24000, 1, 4800), 0.02, 0.04); });
}

TEST(Stft, ParsevalOnWindowedFrames) {
  const AudioClip clip = WhiteNoise(1, 9600, 4);
  const SpectralTensor spec = Stft(clip);
  const auto w = HannWindow(960);
  double spectral = 0.0;
  double windowed = 0.0;
  for (std::size_t t = 0; t < spec.frames(); ++t) {
    for (std::size_t f = 0; f < spec.bins(); ++f) {
      const double scale = (f == 0 || f == 480) ? 1.0 : 2.0;
      spectral += scale * std::norm(spec.at(0, t, f));
    }
    for (std::size_t i = 0; i < 960; ++i) {
      const double v = w[i] * clip.channels[0][t * 480 + i];
      windowed += v * v;
    }
  }
  EXPECT_NEAR(spectral / 960.0, windowed, 1e-6 * windowed);
}

TEST(Istft, RoundTripInterior) {
  const AudioClip clip = WhiteNoise(3, 24000, 5);
  const AudioClip back = Istft(Stft(clip));
  ASSERT_EQ(back.num_channels(), 3u);
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t ch = 0; ch < 3; ++ch) {
    for (std::size_t i = 480; i < back.num_samples() - 480; ++i) {
      err += std::pow(back.channels[ch][i] - clip.channels[ch][i], 2);
      ref += std::pow(clip.channels[ch][i], 2);
    }
  }
  EXPECT_LT(std::sqrt(err / ref), 1e-10);
}

TEST(Istft, ZeroAndSingleFrame) {
  SpectralTensor zero(1, 4, 960, 480, 24000);
  const AudioClip silent = Istft(zero);
  for (double v : silent.channels[0]) ASSERT_EQ(v, 0.0);

  const AudioClip clip = WhiteNoise(1, 960, 6);
  const SpectralTensor spec = Stft(clip);
  ASSERT_EQ(spec.frames(), 1u);
  const AudioClip back = Istft(spec);
  const auto w = HannWindow(960);
  ASSERT_EQ(back.num_samples(), 960u);
  for (std::size_t i = 0; i < 960; ++i) {
    ASSERT_NEAR(back.channels[0][i], w[i] * clip.channels[0][i], 1e-12);
  }
}

TEST(Istft, RejectsNonCola) {
  const SpectralTensor spec =
      Stft(AudioClip(24000, 1, 4800), 0.04, 0.01);
  ExpectCode(ErrorCode::kConfiguration, [&] { Istft(spec); });
}

TEST(MelFilterbank, RowsPositiveAndTriangular) {
  const MelFilterbank fb(24000, 960, 64);
  EXPECT_EQ(fb.bins(), 481u);
  for (std::size_t b = 0; b < 64; ++b) {
    EXPECT_GT(fb.row_sum(b), 0.0) << b;
    for (std::size_t f = 0; f < 481; ++f) {
      ASSERT_GE(fb.weight(b, f), 0.0);
      ASSERT_LE(fb.weight(b, f), 1.0);
    }
  }
  EXPECT_NEAR(HzToMel(MelToHz(1234.5)), 1234.5, 1e-9);
  EXPECT_NEAR(HzToMel(1000.0), 999.9855, 1e-3);
  ExpectCode(ErrorCode::kConfiguration, [] { MelFilterbank(24000, 960, 482); });
}

TEST(LogMel, FloorOnSilence) {
  SpectralTensor spec(2, 3, 960, 480, 24000);
  const FeatureTensor lm = LogMel(spec);
  EXPECT_EQ(lm.channels, 2u);
  EXPECT_EQ(lm.frames, 3u);
  EXPECT_EQ(lm.bands, 64u);
  for (double v : lm.values) ASSERT_DOUBLE_EQ(v, std::log(1e-10));
}

TEST(LogMel, ImpulseSpectrumGivesFilterWeights) {
  const MelFilterbank fb(24000, 960, 64);
  for (std::size_t bin : {3u, 40u, 250u, 470u}) {
    SpectralTensor spec(1, 1, 960, 480, 24000);
    spec.at(0, 0, bin) = 1.0;
    const FeatureTensor lm = LogMel(spec, 64, 1e-30);
    for (std::size_t b = 0; b < 64; ++b) {
      const double expected = std::max(fb.weight(b, bin), 1e-30);
      ASSERT_NEAR(std::exp(lm.at(0, 0, b)), expected, 1e-12 * (1 + expected));
    }
  }
}

TEST(LogMel, MonotoneInPower) {
  const AudioClip clip = WhiteNoise(1, 4800, 7);
  SpectralTensor a = Stft(clip);
  SpectralTensor b = a;
  for (auto& c : b.data()) c *= 1.5;
  const FeatureTensor la = LogMel(a);
  const FeatureTensor lb = LogMel(b);
  for (std::size_t i = 0; i < la.values.size(); ++i) {
    ASSERT_GE(lb.values[i], la.values[i]);
  }
}

TEST(IntensityVectors, RequiresFourChannels) {
  SpectralTensor spec(3, 2, 960, 480, 24000);
  ExpectCode(ErrorCode::kFormat, [&] { IntensityVectors(spec); });
}

TEST(IntensityVectors, ZeroSignalGivesZeroVectors) {
  SpectralTensor spec(4, 2, 960, 480, 24000);
  const FeatureTensor iv = IntensityVectors(spec);
  EXPECT_EQ(iv.channels, 3u);
  EXPECT_EQ(iv.layout, FeatureLayout::kIntensity);
  for (double v : iv.values) ASSERT_EQ(v, 0.0);
}

TEST(IntensityVectors, PlaneWaveDirection) {
  for (AzEl dir : {AzEl{0, 0}, AzEl{-135, 30}, AzEl{70, -50}}) {
    SceneConfig scene;
    scene.duration_s = 1.0;
    EventSpec e;
    e.onset_s = 0.0;
    e.offset_s = 1.0;
    e.trajectory = {{0.0, dir}};
    scene.events.push_back(e);
    const SpectralTensor spec = Stft(EncodeFoa(scene));
    const FeatureTensor iv = IntensityVectors(spec);
    const FeatureTensor lm = LogMel(spec);
    const DirectionVector truth = AzElToUnit(dir);
    double peak = -1e300;
    for (std::size_t t = 0; t < lm.frames; ++t) {
      for (std::size_t b = 0; b < lm.bands; ++b) peak = std::max(peak, lm.at(0, t, b));
    }
    const double gate = peak - 6.0 * std::log(10.0);  // -60 dB
    for (std::size_t t = 0; t < iv.frames; ++t) {
      for (std::size_t b = 0; b < iv.bands; ++b) {
        if (lm.at(0, t, b) < gate) continue;
        ASSERT_NEAR(iv.at(0, t, b), truth.x, 1e-6);
        ASSERT_NEAR(iv.at(1, t, b), truth.y, 1e-6);
        ASSERT_NEAR(iv.at(2, t, b), truth.z, 1e-6);
      }
    }
  }
}

TEST(AssembleFeatures, ConcatenatesChannels) {
  const AudioClip clip = WhiteNoise(4, 120000, 8);
  const SpectralTensor spec = Stft(clip);
  const FeatureTensor lm = LogMel(spec);
  const FeatureTensor iv = IntensityVectors(spec);
  const FeatureTensor all = AssembleFeatures(lm, iv);
  EXPECT_EQ(all.layout, FeatureLayout::kCombined);
  EXPECT_EQ(all.channels, 7u);
  EXPECT_EQ(all.frames, 249u);
  EXPECT_EQ(all.bands, 64u);
  EXPECT_EQ(all.at(2, 100, 10), lm.at(2, 100, 10));
  EXPECT_EQ(all.at(5, 100, 10), iv.at(1, 100, 10));

  FeatureTensor short_iv(FeatureLayout::kIntensity, 3, 248, 64);
  ExpectCode(ErrorCode::kShape, [&] { AssembleFeatures(lm, short_iv); });
}

TEST(ChannelOrder, AcnRoundTrip) {
  const AudioClip wxyz = WhiteNoise(4, 100, 9);
  const AudioClip acn = WxyzToAcn(wxyz);
  EXPECT_EQ(acn.channels[0], wxyz.channels[0]);
  EXPECT_EQ(acn.channels[1], wxyz.channels[2]);  // Y
  EXPECT_EQ(acn.channels[2], wxyz.channels[3]);  // Z
  EXPECT_EQ(acn.channels[3], wxyz.channels[1]);  // X
  EXPECT_EQ(AcnToWxyz(acn).channels, wxyz.channels);
}

}  // namespace
}  // namespace seld
