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

#ifndef SELD_DSP_H_
#define SELD_DSP_H_

#include <cstddef>
#include <vector>

#include "seld/audio.h"

namespace seld {

inline constexpr double kDefaultWindowS = 0.04;
inline constexpr double kDefaultHopS = 0.02;
inline constexpr std::size_t kDefaultMelBands = 64;
inline constexpr double kDefaultLogFloor = 1e-10;
inline constexpr double kIntensityGuard = 1e-9;

// Converts a duration to a whole number of samples; throws kConfiguration if
// the product is not an integer.
std::size_t SecondsToSamples(double seconds, int sample_rate);

// Periodic Hann window, which sums to one when overlapped at 50%.
std::vector<double> HannWindow(std::size_t length);

// Hann-windowed STFT with fft_size equal to the window length.
// Frame count is floor((N - window) / hop) + 1.
SpectralTensor Stft(const AudioClip& clip, double window_s = kDefaultWindowS,
                    double hop_s = kDefaultHopS);

// Overlap-add inverse of Stft. Requires hop == window / 2; interior samples
// (those covered by two frames) reconstruct exactly.
AudioClip Istft(const SpectralTensor& spec);

double HzToMel(double hz);
double MelToHz(double mel);

// HTK-scale triangular filters spanning 0 Hz to Nyquist, without area
// normalization.
class MelFilterbank {
 public:
  MelFilterbank(int sample_rate, std::size_t fft_size, std::size_t num_bands);

  std::size_t bands() const { return bands_; }
  std::size_t bins() const { return bins_; }
  double weight(std::size_t band, std::size_t bin) const {
    return weights_[band * bins_ + bin];
  }
  double row_sum(std::size_t band) const { return row_sums_[band]; }

 private:
  std::size_t bands_;
  std::size_t bins_;
  std::vector<double> weights_;
  std::vector<double> row_sums_;
};

// Per channel: log(max(melfb . |X|^2, floor)).
FeatureTensor LogMel(const SpectralTensor& spec,
                     std::size_t num_bands = kDefaultMelBands,
                     double floor = kDefaultLogFloor);

// FoA intensity vectors. Input channels must be ordered (W, X, Y, Z).
// Per bin I = Re{conj(W) (X, Y, Z)} / max(|I|, guard); bands hold the
// filter-weighted mean of the per-bin unit vectors. Output is 3 x T x bands.
FeatureTensor IntensityVectors(const SpectralTensor& spec,
                               std::size_t num_bands = kDefaultMelBands);

// Concatenates log-mel channels followed by the three intensity channels.
FeatureTensor AssembleFeatures(const FeatureTensor& logmels,
                               const FeatureTensor& ivs);

// DCASE FOA files use ACN channel order (W, Y, Z, X). These reorder to and
// from the (W, X, Y, Z) order used throughout this library.
AudioClip AcnToWxyz(const AudioClip& acn);
AudioClip WxyzToAcn(const AudioClip& wxyz);

}  // namespace seld

#endif  // SELD_DSP_H_
