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

#ifndef SELD_SCENE_SIM_H_
#define SELD_SCENE_SIM_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seld/audio.h"
#include "seld/geometry.h"
#include "seld/trackwise.h"

namespace seld {

inline constexpr double kSpeedOfSound = 343.0;
inline constexpr double kDefaultArrayRadius = 0.042;

struct Waypoint {
  double time_s = 0.0;
  AzEl direction;
};

struct SignalSpec {
  enum class Kind { kNoise, kTone, kSamples };
  Kind kind = Kind::kNoise;
  double amplitude = 0.1;        // noise standard deviation or tone peak
  double frequency_hz = 1000.0;  // tones only
  std::vector<double> samples;   // kSamples: mono, at the scene rate
};

struct EventSpec {
  int class_id = 0;
  int source_id = -1;  // -1: numbered per class in scene order
  double onset_s = 0.0;
  double offset_s = 0.0;
  // Piecewise path, interpolated along great circles. A single waypoint
  // denotes a static source.
  std::vector<Waypoint> trajectory;
  SignalSpec signal;

  DirectionVector DirectionAt(double time_s) const;
};

struct SceneConfig {
  double duration_s = 5.0;
  int sample_rate = kDefaultSampleRate;
  std::vector<EventSpec> events;
  std::optional<double> noise_snr_db;
  double array_radius_m = kDefaultArrayRadius;
  std::uint64_t seed = 0;
};

// Capsule positions in meters relative to the array center.
struct MicArrayGeometry {
  std::vector<DirectionVector> positions;

  std::size_t size() const { return positions.size(); }

  // Four capsules at (+,+,+), (+,-,-), (-,+,-), (-,-,+) directions, the
  // layout of the DCASE 4-channel MIC format.
  static MicArrayGeometry Tetrahedral(double radius = kDefaultArrayRadius);
};

struct RenderOptions {
  double window_s = 0.04;
  double hop_s = 0.02;
  double speed_of_sound = kSpeedOfSound;
};

// Throws kValidation describing the first problem found.
void ValidateScene(const SceneConfig& scene);

// Mono signal of one event over its (duration-clipped) active span, starting
// at the onset sample. Deterministic in (scene.seed, event index).
std::vector<double> EventSignal(const SceneConfig& scene,
                                std::size_t event_index);

// 4-channel (W, X, Y, Z) SN3D encoding with per-sample directions. Events
// running past the scene end are clipped and reported in `warnings`.
AudioClip EncodeFoa(const SceneConfig& scene,
                    std::vector<std::string>* warnings = nullptr);

// Far-field plane-wave capture by the array: capsule m receives each event
// delayed by -(p_m . n(t)) / c, applied as a per-frame phase shift.
AudioClip RenderMicArray(const SceneConfig& scene,
                         const MicArrayGeometry& geom,
                         const RenderOptions& opts = {},
                         std::vector<std::string>* warnings = nullptr);

// Noise-free capture expressed directly on the STFT grid of the scene clip:
// X_m(f,t) = sum_e S_e(f,t) exp(-j 2 pi f tau_{m,e}(t)).
SpectralTensor RenderMicArraySpectral(const SceneConfig& scene,
                                      const MicArrayGeometry& geom,
                                      const RenderOptions& opts = {});

// Number of label frames covering the scene.
std::size_t LabelFrameCount(const SceneConfig& scene,
                            double label_hop_s = kLabelHopS);

// Event instances on the label grid. A frame belongs to an event when its
// center lies in [onset, offset); directions are sampled at frame centers.
std::vector<EventInstance> GroundTruthEvents(const SceneConfig& scene,
                                             double label_hop_s = kLabelHopS);

// Ground-truth events placed in the clip-scoped trackwise format.
ClipLabels GroundTruthLabels(const SceneConfig& scene,
                             double label_hop_s = kLabelHopS,
                             std::size_t tracks = kDefaultTracks,
                             std::size_t classes = kDefaultClasses,
                             std::size_t clip_frames = kClipLabelFrames);

// Scene JSON (see docs/scene_schema.json). Relative WAV paths resolve
// against `base_dir`.
SceneConfig ParseSceneJson(std::string_view text,
                           const std::string& base_dir = ".");
SceneConfig LoadSceneJson(const std::string& path);

}  // namespace seld

#endif  // SELD_SCENE_SIM_H_
