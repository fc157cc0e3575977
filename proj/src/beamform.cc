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

#include "seld/beamform.h"

#include <algorithm>
#include <cmath>

#include "seld/error.h"

namespace seld {

double SourceMicDistance(const DirectionVector& source,
                         const DirectionVector& mic) {
  return (source - mic).Norm();
}

std::complex<double> SteeringValue(double freq_hz, double distance_m,
                                   double speed_of_sound) {
  return std::polar(1.0, -2.0 * kPi * freq_hz * distance_m / speed_of_sound);
}

double TrackWeight(double source_distance_m) {
  return source_distance_m >= kWeightDistanceThreshold ? source_distance_m
                                                       : kInactiveTrackWeight;
}

double TrackWeight(const DirectionVector& source_position) {
  return TrackWeight(source_position.Norm());
}

SteeringField::SteeringField(std::size_t tracks, std::size_t channels,
                             std::size_t frames, std::vector<double> bin_hz,
                             double speed_of_sound)
    : tracks_(tracks),
      channels_(channels),
      frames_(frames),
      bin_hz_(std::move(bin_hz)),
      c_(speed_of_sound),
      distances_(tracks * channels * frames, 0.0),
      weights_(tracks * frames, kInactiveTrackWeight),
      positions_(tracks * frames) {}

void SteeringField::Set(std::size_t k, std::size_t t,
                        const DirectionVector& position, double weight,
                        const std::vector<double>& capsule_distances) {
  positions_[k * frames_ + t] = position;
  weights_[k * frames_ + t] = weight;
  for (std::size_t m = 0; m < channels_; ++m) {
    distances_[(k * channels_ + m) * frames_ + t] = capsule_distances[m];
  }
}

std::size_t HeldLabelFrame(std::size_t stft_frame, std::size_t ratio,
                           std::size_t label_frames) {
  if (label_frames == 0) return 0;
  return std::min(stft_frame / ratio, label_frames - 1);
}

SteeringField ComputeSteeringField(const SpectralTensor& spec,
                                   const ClipLabels& trajectories,
                                   const MicArrayGeometry& geom,
                                   const BeamformOptions& opts) {
  if (spec.channels() != geom.size()) {
    throw Error(ErrorCode::kShape, "beamform",
                std::to_string(spec.channels()) + " spectral channels for " +
                    std::to_string(geom.size()) + " capsules");
  }
  if (trajectories.num_frames() == 0) {
    throw Error(ErrorCode::kShape, "beamform", "trajectories have no frames");
  }
  const double ratio_exact = opts.label_hop_s / spec.hop_s();
  const double ratio_rounded = std::round(ratio_exact);
  if (ratio_rounded < 1.0 || std::abs(ratio_exact - ratio_rounded) > 1e-6) {
    throw Error(ErrorCode::kConfiguration, "beamform",
                "label hop must be a whole multiple of the STFT hop");
  }
  const auto ratio = static_cast<std::size_t>(ratio_rounded);

  std::vector<double> bin_hz(spec.bins());
  for (std::size_t f = 0; f < spec.bins(); ++f) bin_hz[f] = spec.bin_hz(f);
  SteeringField field(trajectories.num_tracks(), geom.size(), spec.frames(),
                      std::move(bin_hz), opts.speed_of_sound);

  std::vector<double> dist(geom.size());
  for (std::size_t k = 0; k < trajectories.num_tracks(); ++k) {
    DirectionVector held{1.0, 0.0, 0.0};
    for (std::size_t t = 0; t < spec.frames(); ++t) {
      const std::size_t lf =
          HeldLabelFrame(t, ratio, trajectories.num_frames());
      const bool active = trajectories.active(k, lf) &&
                          !trajectories.direction(k, lf).IsInactive();
      if (active) held = trajectories.direction(k, lf);
      const DirectionVector pos = held * opts.source_distance_m;
      // An inactive cell carries the zero sentinel, so its source distance
      // is 0 and the weight rule yields 0.01.
      const double w = active ? TrackWeight(pos) : kInactiveTrackWeight;
      for (std::size_t m = 0; m < geom.size(); ++m) {
        dist[m] = SourceMicDistance(pos, geom.positions[m]);
      }
      field.Set(k, t, pos, w, dist);
    }
  }
  return field;
}

SpectralTensor DsBeamform(const SpectralTensor& spec,
                          const SteeringField& field) {
  if (spec.channels() != field.channels() || spec.frames() != field.frames() ||
      spec.bins() != field.bins()) {
    throw Error(ErrorCode::kShape, "beamform",
                "steering field does not match the spectral grid");
  }
  const std::size_t m_count = spec.channels();
  SpectralTensor out(field.tracks(), spec.frames(), spec.fft_size(),
                     spec.hop_samples(), spec.sample_rate());
  const double inv_m = 1.0 / static_cast<double>(m_count);
  for (std::size_t k = 0; k < field.tracks(); ++k) {
    for (std::size_t t = 0; t < spec.frames(); ++t) {
      const double w = field.weight(k, t);
      for (std::size_t f = 0; f < spec.bins(); ++f) {
        std::complex<double> acc = 0.0;
        for (std::size_t m = 0; m < m_count; ++m) {
          acc += w * std::conj(field.value(k, m, t, f)) * spec.at(m, t, f);
        }
        out.at(k, t, f) = acc * inv_m;
      }
    }
  }
  return out;
}

SpectralTensor DsBeamform(const SpectralTensor& spec,
                          const ClipLabels& trajectories,
                          const MicArrayGeometry& geom,
                          const BeamformOptions& opts) {
  return DsBeamform(spec, ComputeSteeringField(spec, trajectories, geom, opts));
}

SpectralTensor SteerChannels(const SpectralTensor& spec,
                             const SteeringField& field, std::size_t track) {
  if (spec.channels() != field.channels() || spec.frames() != field.frames() ||
      spec.bins() != field.bins() || track >= field.tracks()) {
    throw Error(ErrorCode::kShape, "beamform",
                "steering field does not match the spectral grid");
  }
  SpectralTensor out(spec.channels(), spec.frames(), spec.fft_size(),
                     spec.hop_samples(), spec.sample_rate());
  for (std::size_t m = 0; m < spec.channels(); ++m) {
    for (std::size_t t = 0; t < spec.frames(); ++t) {
      for (std::size_t f = 0; f < spec.bins(); ++f) {
        out.at(m, t, f) =
            std::conj(field.value(track, m, t, f)) * spec.at(m, t, f);
      }
    }
  }
  return out;
}

}  // namespace seld
