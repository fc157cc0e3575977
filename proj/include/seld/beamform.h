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

#ifndef SELD_BEAMFORM_H_
#define SELD_BEAMFORM_H_

#include <complex>
#include <cstddef>
#include <vector>

#include "seld/audio.h"
#include "seld/geometry.h"
#include "seld/scene_sim.h"
#include "seld/trackwise.h"

namespace seld {

inline constexpr double kWeightDistanceThreshold = 0.5;
inline constexpr double kInactiveTrackWeight = 0.01;

struct BeamformOptions {
  double speed_of_sound = kSpeedOfSound;
  // Label directions are scaled by this to obtain source positions (meters).
  double source_distance_m = 1.0;
  double label_hop_s = kLabelHopS;
};

// Euclidean distance between a source position and a capsule position.
double SourceMicDistance(const DirectionVector& source,
                         const DirectionVector& mic);

// exp(-j 2 pi f d / c).
std::complex<double> SteeringValue(double freq_hz, double distance_m,
                                   double speed_of_sound = kSpeedOfSound);

// sqrt(x^2 + y^2 + z^2) when the source distance reaches 0.5 m, else 0.01.
double TrackWeight(double source_distance_m);
double TrackWeight(const DirectionVector& source_position);

// Per-clip steering state on the STFT grid: source-capsule distances and
// track weights per (track, frame). Steering values are derived on access
// and always have unit modulus.
class SteeringField {
 public:
  SteeringField(std::size_t tracks, std::size_t channels, std::size_t frames,
                std::vector<double> bin_hz, double speed_of_sound);

  std::size_t tracks() const { return tracks_; }
  std::size_t channels() const { return channels_; }
  std::size_t frames() const { return frames_; }
  std::size_t bins() const { return bin_hz_.size(); }
  double speed_of_sound() const { return c_; }

  double distance(std::size_t k, std::size_t m, std::size_t t) const {
    return distances_[(k * channels_ + m) * frames_ + t];
  }
  double weight(std::size_t k, std::size_t t) const {
    return weights_[k * frames_ + t];
  }
  const DirectionVector& position(std::size_t k, std::size_t t) const {
    return positions_[k * frames_ + t];
  }
  std::complex<double> value(std::size_t k, std::size_t m, std::size_t t,
                             std::size_t f) const {
    return SteeringValue(bin_hz_[f], distance(k, m, t), c_);
  }

  void Set(std::size_t k, std::size_t t, const DirectionVector& position,
           double weight, const std::vector<double>& capsule_distances);

 private:
  std::size_t tracks_;
  std::size_t channels_;
  std::size_t frames_;
  std::vector<double> bin_hz_;
  double c_;
  std::vector<double> distances_;
  std::vector<double> weights_;
  std::vector<DirectionVector> positions_;
};

// Label frame held by STFT frame `t` (zero-order hold at an integer ratio).
std::size_t HeldLabelFrame(std::size_t stft_frame, std::size_t ratio,
                           std::size_t label_frames);

// Builds the steering field for `spec`'s grid from trackwise trajectories.
// Inactive cells keep the last active direction (+x before the first one)
// and use the 0.01 weight.
SteeringField ComputeSteeringField(const SpectralTensor& spec,
                                   const ClipLabels& trajectories,
                                   const MicArrayGeometry& geom,
                                   const BeamformOptions& opts = {});

// Y_k(f,t) = (1/M) sum_m w_k(t) conj(s_{k,m}(f,t)) X_m(f,t). The result has
// one channel per track.
SpectralTensor DsBeamform(const SpectralTensor& spec,
                          const ClipLabels& trajectories,
                          const MicArrayGeometry& geom,
                          const BeamformOptions& opts = {});
SpectralTensor DsBeamform(const SpectralTensor& spec,
                          const SteeringField& field);

// conj(s_{k,m}) X_m for every capsule of one track, before weighting and
// summation. Used to inspect phase alignment.
SpectralTensor SteerChannels(const SpectralTensor& spec,
                             const SteeringField& field, std::size_t track);

}  // namespace seld

#endif  // SELD_BEAMFORM_H_
