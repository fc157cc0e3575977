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

#ifndef SELD_PIPELINE_H_
#define SELD_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seld/audio.h"
#include "seld/beamform.h"
#include "seld/metrics.h"
#include "seld/scene_sim.h"
#include "seld/trackwise.h"

namespace seld {

inline constexpr const char* kOutputDirEnv = "SELD_OUTPUT_DIR";

struct PipelineConfig {
  // Inputs. Empty paths fall back to the artifact names inside output_dir.
  std::string scene_path;
  std::string foa_wav;
  std::string mic_wav;
  std::string reference_csv;
  std::string prediction_csv;
  std::string output_dir;

  double window_s = 0.04;
  double hop_s = 0.02;
  std::size_t mel_bands = 64;
  double label_hop_s = kLabelHopS;
  std::size_t tracks = kDefaultTracks;
  std::size_t classes = kDefaultClasses;
  double speed_of_sound = kSpeedOfSound;
  double array_radius_m = kDefaultArrayRadius;
  double source_distance_m = 1.0;
  double activity_threshold_db = -40.0;
  double doa_threshold_deg = kDoaThresholdDeg;
  bool acn_input = false;  // FoA input stored as (W, Y, Z, X)
  std::optional<std::uint64_t> seed;  // overrides the scene seed
};

// Output directory from the environment, or "seld_out".
std::string DefaultOutputDir();

// Overrides fields of `cfg` with the keys present in a JSON object. Unknown
// keys raise kConfiguration.
void ApplyPipelineJson(PipelineConfig& cfg, std::string_view json_text);
void ApplyPipelineConfigFile(PipelineConfig& cfg, const std::string& path);

// Throws kConfiguration for non-positive or inconsistent constants.
void ValidatePipelineConfig(const PipelineConfig& cfg);

// Artifact names inside the output directory.
namespace artifact {
inline constexpr const char* kFoaWav = "foa.wav";
inline constexpr const char* kMicWav = "mic.wav";
inline constexpr const char* kReferenceCsv = "reference.csv";
inline constexpr const char* kFeatures = "features.seldtnsr";
inline constexpr const char* kPredictionCsv = "predicted.csv";
inline constexpr const char* kBeamformedWav = "beamformed.wav";
inline constexpr const char* kBeamformReport = "beamform_report.txt";
inline constexpr const char* kTrackwise = "trackwise.seldtnsr";
inline constexpr const char* kMetricsTxt = "metrics.txt";
inline constexpr const char* kMetricsCsv = "metrics.csv";
inline constexpr const char* kLog = "log.jsonl";
}  // namespace artifact

// Appends one JSON object per line to <output_dir>/log.jsonl.
class RunLog {
 public:
  explicit RunLog(std::string output_dir) : dir_(std::move(output_dir)) {}
  void Truncate() const;
  void Write(std::string_view stage, std::string_view level,
             std::string_view message) const;

 private:
  std::string dir_;
};

struct TrackSnr {
  std::size_t track = 0;
  std::size_t active_frames = 0;  // STFT frames
  double input_snr_db = 0.0;
  double output_snr_db = 0.0;
  double gain_db = 0.0;
};

struct BeamformReport {
  std::vector<TrackSnr> tracks;  // tracks with at least one active frame
  std::optional<double> noise_suppression_db;
  std::string ToKeyValue() const;
};

// SNR before (capsule average) and after the weighted delay-and-sum, from
// separately rendered clean and noise captures. Powers are taken over the
// STFT frames where the track is active; output powers are normalized by the
// squared track weight.
BeamformReport ComputeBeamformReport(const AudioClip& clean,
                                     const AudioClip& noise,
                                     const ClipLabels& trajectories,
                                     const MicArrayGeometry& geom,
                                     const BeamformOptions& opts,
                                     double window_s, double hop_s);

// Single-source predictions from the intensity-vector oracle. Each active
// frame takes the class and source of the reference event nearest to the
// estimate; without reference events the frame is left empty.
std::vector<EventInstance> OraclePredictions(
    const ClipLabels& oracle, std::span<const EventInstance> reference);

// Number of label frames spanning `num_samples`.
std::size_t LabelFramesForSamples(std::size_t num_samples, int sample_rate,
                                  double label_hop_s);

// Stages. Each reads its inputs from the configured paths (or earlier
// artifacts in output_dir) and writes its own artifacts.
void RunSimulate(const PipelineConfig& cfg);
void RunFeatures(const PipelineConfig& cfg);
void RunBeamform(const PipelineConfig& cfg);
void RunReorder(const PipelineConfig& cfg);
MetricsReport RunEvaluate(const PipelineConfig& cfg);

// simulate (when a scene is given), features, beamform, evaluate.
MetricsReport RunPipeline(const PipelineConfig& cfg);

}  // namespace seld

#endif  // SELD_PIPELINE_H_
