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

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "fft.h"
#include "seld/error.h"
#include "seld/geometry.h"

namespace seld {

std::size_t SecondsToSamples(double seconds, int sample_rate) {
  const double exact = seconds * sample_rate;
  const double rounded = std::round(exact);
  if (rounded <= 0.0 || std::abs(exact - rounded) > 1e-6) {
    throw Error(ErrorCode::kConfiguration, "dsp",
                std::to_string(seconds) + " s is not a positive whole number "
                "of samples at " + std::to_string(sample_rate) + " Hz");
  }
  return static_cast<std::size_t>(rounded);
}

std::vector<double> HannWindow(std::size_t length) {
  std::vector<double> w(length);
  for (std::size_t n = 0; n < length; ++n) {
    w[n] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(n) /
                                static_cast<double>(length));
  }
  return w;
}

SpectralTensor Stft(const AudioClip& clip, double window_s, double hop_s) {
  if (window_s < hop_s) {
    throw Error(ErrorCode::kConfiguration, "dsp",
                "window must not be shorter than hop");
  }
  const std::size_t win = SecondsToSamples(window_s, clip.sample_rate);
  const std::size_t hop = SecondsToSamples(hop_s, clip.sample_rate);
  const std::size_t n = clip.num_samples();
  if (clip.num_channels() == 0 || n < win) {
    throw Error(ErrorCode::kInsufficientInput, "dsp",
                "clip of " + std::to_string(n) +
                    " samples is shorter than one " + std::to_string(win) +
                    "-sample window");
  }
  const std::size_t frames = (n - win) / hop + 1;
  SpectralTensor spec(clip.num_channels(), frames, win, hop, clip.sample_rate);
  const std::vector<double> window = HannWindow(win);
  internal::RealFft fft(win);
  std::vector<double> frame(win);
  std::vector<std::complex<double>> out(fft.bins());
  for (std::size_t ch = 0; ch < clip.num_channels(); ++ch) {
    const std::vector<double>& x = clip.channels[ch];
    for (std::size_t t = 0; t < frames; ++t) {
      const std::size_t start = t * hop;
      for (std::size_t i = 0; i < win; ++i) frame[i] = x[start + i] * window[i];
      fft.Forward(frame, out);
      std::copy(out.begin(), out.end(), &spec.at(ch, t, 0));
    }
  }
  return spec;
}

AudioClip Istft(const SpectralTensor& spec) {
  const std::size_t win = spec.fft_size();
  const std::size_t hop = spec.hop_samples();
  if (win == 0 || hop * 2 != win) {
    throw Error(ErrorCode::kConfiguration, "dsp",
                "overlap-add synthesis needs hop == window / 2 (window " +
                    std::to_string(win) + ", hop " + std::to_string(hop) + ")");
  }
  const std::size_t frames = spec.frames();
  const std::size_t length = frames == 0 ? 0 : (frames - 1) * hop + win;
  AudioClip clip(spec.sample_rate(), spec.channels(), length);
  internal::RealFft fft(win);
  std::vector<double> frame(win);
  for (std::size_t ch = 0; ch < spec.channels(); ++ch) {
    std::vector<double>& y = clip.channels[ch];
    for (std::size_t t = 0; t < frames; ++t) {
      fft.Inverse({&spec.at(ch, t, 0), spec.bins()}, frame);
      const std::size_t start = t * hop;
      for (std::size_t i = 0; i < win; ++i) y[start + i] += frame[i];
    }
  }
  return clip;
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank::MelFilterbank(int sample_rate, std::size_t fft_size,
                             std::size_t num_bands)
    : bands_(num_bands), bins_(fft_size / 2 + 1) {
  if (num_bands == 0 || num_bands > bins_) {
    throw Error(ErrorCode::kConfiguration, "dsp",
                std::to_string(num_bands) + " mel bands requested for " +
                    std::to_string(bins_) + " frequency bins");
  }
  const double max_mel = HzToMel(sample_rate / 2.0);
  std::vector<double> edges(num_bands + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = MelToHz(max_mel * static_cast<double>(i) /
                       static_cast<double>(num_bands + 1));
  }
  weights_.assign(bands_ * bins_, 0.0);
  row_sums_.assign(bands_, 0.0);
  for (std::size_t b = 0; b < bands_; ++b) {
    const double lo = edges[b];
    const double mid = edges[b + 1];
    const double hi = edges[b + 2];
    for (std::size_t k = 0; k < bins_; ++k) {
      const double f = static_cast<double>(k) * sample_rate /
                       static_cast<double>(fft_size);
      double w = 0.0;
      if (f > lo && f < hi) {
        w = f <= mid ? (f - lo) / (mid - lo) : (hi - f) / (hi - mid);
      }
      weights_[b * bins_ + k] = w;
      row_sums_[b] += w;
    }
  }
}

FeatureTensor LogMel(const SpectralTensor& spec, std::size_t num_bands,
                     double floor) {
  const MelFilterbank fb(spec.sample_rate(), spec.fft_size(), num_bands);
  FeatureTensor out(FeatureLayout::kLogMel, spec.channels(), spec.frames(),
                    num_bands);
  std::vector<double> power(spec.bins());
  for (std::size_t ch = 0; ch < spec.channels(); ++ch) {
    for (std::size_t t = 0; t < spec.frames(); ++t) {
      for (std::size_t k = 0; k < spec.bins(); ++k) {
        power[k] = std::norm(spec.at(ch, t, k));
      }
      for (std::size_t b = 0; b < num_bands; ++b) {
        double e = 0.0;
        for (std::size_t k = 0; k < spec.bins(); ++k) {
          e += fb.weight(b, k) * power[k];
        }
        out.at(ch, t, b) = std::log(std::max(e, floor));
      }
    }
  }
  return out;
}

FeatureTensor IntensityVectors(const SpectralTensor& spec,
                               std::size_t num_bands) {
  if (spec.channels() != 4) {
    throw Error(ErrorCode::kFormat, "dsp",
                "intensity vectors need 4 FoA channels (W, X, Y, Z), got " +
                    std::to_string(spec.channels()));
  }
  const MelFilterbank fb(spec.sample_rate(), spec.fft_size(), num_bands);
  FeatureTensor out(FeatureLayout::kIntensity, 3, spec.frames(), num_bands);
  const std::size_t bins = spec.bins();
  std::vector<double> ix(bins), iy(bins), iz(bins);
  for (std::size_t t = 0; t < spec.frames(); ++t) {
    for (std::size_t k = 0; k < bins; ++k) {
      const std::complex<double> w = std::conj(spec.at(0, t, k));
      const double x = (w * spec.at(1, t, k)).real();
      const double y = (w * spec.at(2, t, k)).real();
      const double z = (w * spec.at(3, t, k)).real();
      const double norm =
          std::max(std::sqrt(x * x + y * y + z * z), kIntensityGuard);
      ix[k] = x / norm;
      iy[k] = y / norm;
      iz[k] = z / norm;
    }
    for (std::size_t b = 0; b < num_bands; ++b) {
      double sx = 0.0, sy = 0.0, sz = 0.0;
      for (std::size_t k = 0; k < bins; ++k) {
        const double wgt = fb.weight(b, k);
        sx += wgt * ix[k];
        sy += wgt * iy[k];
        sz += wgt * iz[k];
      }
      const double total = fb.row_sum(b);
      if (total > 0.0) {
        out.at(0, t, b) = sx / total;
        out.at(1, t, b) = sy / total;
        out.at(2, t, b) = sz / total;
      }
    }
  }
  return out;
}

FeatureTensor AssembleFeatures(const FeatureTensor& logmels,
                               const FeatureTensor& ivs) {
  if (logmels.layout != FeatureLayout::kLogMel ||
      ivs.layout != FeatureLayout::kIntensity || ivs.channels != 3) {
    throw Error(ErrorCode::kShape, "dsp",
                "expected a log-mel tensor and a 3-channel intensity tensor");
  }
  if (logmels.frames != ivs.frames || logmels.bands != ivs.bands) {
    throw Error(ErrorCode::kShape, "dsp",
                "log-mel " + std::to_string(logmels.frames) + "x" +
                    std::to_string(logmels.bands) + " vs intensity " +
                    std::to_string(ivs.frames) + "x" +
                    std::to_string(ivs.bands));
  }
  FeatureTensor out(FeatureLayout::kCombined, logmels.channels + ivs.channels,
                    logmels.frames, logmels.bands);
  std::copy(logmels.values.begin(), logmels.values.end(), out.values.begin());
  std::copy(ivs.values.begin(), ivs.values.end(),
            out.values.begin() + static_cast<std::ptrdiff_t>(
                                     logmels.values.size()));
  return out;
}

namespace {

AudioClip Permute4(const AudioClip& in, const int (&order)[4]) {
  if (in.num_channels() != 4) {
    throw Error(ErrorCode::kFormat, "dsp",
                "FoA reordering needs 4 channels, got " +
                    std::to_string(in.num_channels()));
  }
  AudioClip out;
  out.sample_rate = in.sample_rate;
  for (int src : order) out.channels.push_back(in.channels[src]);
  return out;
}

}  // namespace

AudioClip AcnToWxyz(const AudioClip& acn) {
  static constexpr int kOrder[4] = {0, 3, 1, 2};
  return Permute4(acn, kOrder);
}

AudioClip WxyzToAcn(const AudioClip& wxyz) {
  static constexpr int kOrder[4] = {0, 2, 3, 1};
  return Permute4(wxyz, kOrder);
}

}  // namespace seld
