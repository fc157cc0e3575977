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

#ifndef SELD_METRICS_H_
#define SELD_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seld/geometry.h"
#include "seld/trackwise.h"

namespace seld {

inline constexpr double kDoaThresholdDeg = 20.0;
inline constexpr std::size_t kErrorRateSegmentFrames = 10;  // 1 s

struct LabeledDoa {
  int class_id = 0;
  DirectionVector direction;
};

// Detected (or reference) events per label frame.
using FrameDoas = std::vector<std::vector<LabeledDoa>>;

FrameDoas FrameDoasFromLabels(const ClipLabels& labels);
FrameDoas FrameDoasFromEvents(std::span<const EventInstance> events,
                              std::size_t frames);

struct MetricsConfig {
  std::size_t classes = kDefaultClasses;
  double threshold_deg = kDoaThresholdDeg;
  std::size_t segment_frames = kErrorRateSegmentFrames;
};

struct FrameMatch {
  std::size_t frame = 0;
  int class_id = 0;
  std::size_t ref_index = 0;   // index into ref[frame]
  std::size_t pred_index = 0;  // index into pred[frame]
  double angle_deg = 0.0;
  bool within_threshold = false;
};

// Per frame and class, Hungarian matching of predictions to references on
// angular distance. Every matched pair is returned; `within_threshold`
// marks the ones that count as location-aware true positives.
std::vector<FrameMatch> MatchEvents(const FrameDoas& pred, const FrameDoas& ref,
                                    const MetricsConfig& cfg = {});

struct ClassCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  long refs = 0;
  long matched = 0;
  double angle_sum = 0.0;
};

// Additive statistics; clips can be counted separately and summed.
struct SeldCounts {
  std::vector<ClassCounts> per_class;
  long substitutions = 0;
  long deletions = 0;
  long insertions = 0;
  long ref_total = 0;

  SeldCounts& operator+=(const SeldCounts& other);
};

SeldCounts CountSeld(const FrameDoas& pred, const FrameDoas& ref,
                     const MetricsConfig& cfg = {});

// Undefined entries (no references, no matches) are left empty.
struct MetricsReport {
  std::optional<double> er20;
  std::optional<double> f20;     // percent
  std::optional<double> le_cd;   // degrees
  std::optional<double> lr_cd;   // percent
  std::optional<double> seld_score;
  std::optional<double> acc;     // percent
  std::optional<double> mdr;     // percent
  std::optional<double> mae;     // degrees
  std::optional<double> f_macro;

  // "key=value" lines in a fixed order; undefined values print "undefined".
  std::string ToKeyValue() const;
  static std::string CsvHeader();
  std::string ToCsvRow() const;
};

// ER from per-segment substitutions/deletions/insertions; F macro-averaged
// over classes with any reference or prediction; LE over classes with a
// match; LR over classes with a reference.
MetricsReport SeldMetricsFromCounts(const SeldCounts& counts);
MetricsReport ComputeSeldMetrics(const FrameDoas& pred, const FrameDoas& ref,
                                 const MetricsConfig& cfg = {});
MetricsReport ComputeSeldMetrics(const ClipLabels& pred, const ClipLabels& ref,
                                 const MetricsConfig& cfg = {});

// (er + (1 - f/100) + le/180 + (1 - lr/100)) / 4.
double SeldScore(double er, double f_pct, double le_deg, double lr_pct);

struct DoaMetrics {
  double acc = 0.0;  // percent
  double mdr = 0.0;  // percent
  std::optional<double> mae;
  long refs = 0;
  long matched = 0;
};

// Class-agnostic frame-wise matching. Throws kUndefinedMetric without
// references.
DoaMetrics ComputeDoaMetrics(const FrameDoas& pred, const FrameDoas& ref,
                             double threshold_deg = kDoaThresholdDeg);

// Segment-based F1 per class, macro-averaged over classes active in the
// reference. A segment is active when any of its frames has activity >= 0.5.
// Throws kUndefinedMetric when the reference has no active class.
double SegmentFMacro(const ClassActivity& pred, const ClassActivity& ref,
                     std::size_t frames_per_segment = 1);

}  // namespace seld

#endif  // SELD_METRICS_H_
