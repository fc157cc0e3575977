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

#ifndef SELD_AUDIO_H_
#define SELD_AUDIO_H_

#include <complex>
#include <cstddef>
#include <vector>

namespace seld {

inline constexpr int kDefaultSampleRate = 24000;

// Multichannel time-domain buffer. All channels have equal length.
struct AudioClip {
  int sample_rate = kDefaultSampleRate;
  std::vector<std::vector<double>> channels;

  AudioClip() = default;
  AudioClip(int rate, std::size_t num_channels, std::size_t num_samples)
      : sample_rate(rate),
        channels(num_channels, std::vector<double>(num_samples, 0.0)) {}

  std::size_t num_channels() const { return channels.size(); }
  std::size_t num_samples() const {
    return channels.empty() ? 0 : channels.front().size();
  }
  double duration_s() const {
    return static_cast<double>(num_samples()) / sample_rate;
  }
};

// Complex STFT coefficients laid out [channel][frame][bin].
class SpectralTensor {
 public:
  SpectralTensor() = default;
  SpectralTensor(std::size_t channels, std::size_t frames, std::size_t fft_size,
                 std::size_t hop, int sample_rate)
      : channels_(channels),
        frames_(frames),
        bins_(fft_size / 2 + 1),
        fft_size_(fft_size),
        hop_(hop),
        sample_rate_(sample_rate),
        data_(channels * frames * bins_) {}

  std::size_t channels() const { return channels_; }
  std::size_t frames() const { return frames_; }
  std::size_t bins() const { return bins_; }
  std::size_t fft_size() const { return fft_size_; }
  std::size_t hop_samples() const { return hop_; }
  int sample_rate() const { return sample_rate_; }
  double hop_s() const { return static_cast<double>(hop_) / sample_rate_; }
  double window_s() const {
    return static_cast<double>(fft_size_) / sample_rate_;
  }
  double bin_hz(std::size_t bin) const {
    return static_cast<double>(bin) * sample_rate_ / fft_size_;
  }

  std::complex<double>& at(std::size_t ch, std::size_t frame, std::size_t bin) {
    return data_[(ch * frames_ + frame) * bins_ + bin];
  }
  const std::complex<double>& at(std::size_t ch, std::size_t frame,
                                 std::size_t bin) const {
    return data_[(ch * frames_ + frame) * bins_ + bin];
  }

  std::vector<std::complex<double>>& data() { return data_; }
  const std::vector<std::complex<double>>& data() const { return data_; }

 private:
  std::size_t channels_ = 0;
  std::size_t frames_ = 0;
  std::size_t bins_ = 0;
  std::size_t fft_size_ = 0;
  std::size_t hop_ = 0;
  int sample_rate_ = kDefaultSampleRate;
  std::vector<std::complex<double>> data_;
};

enum class FeatureLayout { kLogMel, kIntensity, kCombined };

// Real-valued feature maps laid out [channel][frame][band].
struct FeatureTensor {
  FeatureLayout layout = FeatureLayout::kLogMel;
  std::size_t channels = 0;
  std::size_t frames = 0;
  std::size_t bands = 0;
  std::vector<double> values;

  FeatureTensor() = default;
  FeatureTensor(FeatureLayout l, std::size_t c, std::size_t t, std::size_t b)
      : layout(l), channels(c), frames(t), bands(b), values(c * t * b, 0.0) {}

  double& at(std::size_t c, std::size_t t, std::size_t b) {
    return values[(c * frames + t) * bands + b];
  }
  double at(std::size_t c, std::size_t t, std::size_t b) const {
    return values[(c * frames + t) * bands + b];
  }
};

}  // namespace seld

#endif  // SELD_AUDIO_H_
