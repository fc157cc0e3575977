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

#ifndef SELD_TRACKWISE_H_
#define SELD_TRACKWISE_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seld/geometry.h"

namespace seld {

inline constexpr std::size_t kDefaultTracks = 6;
inline constexpr std::size_t kDefaultClasses = 13;
inline constexpr double kLabelHopS = 0.1;
inline constexpr std::size_t kClipLabelFrames = 50;  // 5 s at 0.1 s

// Trackwise labels or predictions for one clip. Each (track, frame) cell has
// a class-probability row (one-hot for ground truth) and a direction; cells
// with activity below 0.5 are inactive and carry the zero sentinel.
class ClipLabels {
 public:
  ClipLabels() = default;
  ClipLabels(std::size_t tracks, std::size_t frames, std::size_t classes);

  std::size_t num_tracks() const { return tracks_; }
  std::size_t num_frames() const { return frames_; }
  std::size_t num_classes() const { return classes_; }

  double class_prob(std::size_t k, std::size_t t, std::size_t c) const {
    return probs_[(k * frames_ + t) * classes_ + c];
  }
  void set_class_prob(std::size_t k, std::size_t t, std::size_t c, double p) {
    probs_[(k * frames_ + t) * classes_ + c] = p;
  }
  const DirectionVector& direction(std::size_t k, std::size_t t) const {
    return dirs_[k * frames_ + t];
  }
  void set_direction(std::size_t k, std::size_t t, const DirectionVector& d) {
    dirs_[k * frames_ + t] = d;
  }

  // Maximum class probability of the cell.
  double activity(std::size_t k, std::size_t t) const;
  bool active(std::size_t k, std::size_t t) const {
    return activity(k, t) >= 0.5;
  }
  // Most probable class, or -1 when the cell is inactive.
  int class_id(std::size_t k, std::size_t t) const;

  // Marks a cell active with a one-hot class and a direction.
  void SetEvent(std::size_t k, std::size_t t, int class_id,
                const DirectionVector& d);
  void ClearCell(std::size_t k, std::size_t t);

  // Copy with tracks reordered so that track k of the result is track
  // order[k] of this.
  ClipLabels PermuteTracks(std::span<const int> order) const;

 private:
  std::size_t tracks_ = 0;
  std::size_t frames_ = 0;
  std::size_t classes_ = 0;
  std::vector<double> probs_;
  std::vector<DirectionVector> dirs_;
};

// One sound-event instance on the label-frame grid, frames [onset, offset).
struct EventInstance {
  int class_id = 0;
  int source_id = 0;
  int onset_frame = 0;
  int offset_frame = 0;
  std::vector<DirectionVector> directions;  // one per frame

  int length() const { return offset_frame - onset_frame; }
};

// Per-frame class activity [frame][class].
struct ClassActivity {
  std::size_t frames = 0;
  std::size_t classes = 0;
  std::vector<double> values;

  ClassActivity() = default;
  ClassActivity(std::size_t t, std::size_t c)
      : frames(t), classes(c), values(t * c, 0.0) {}
  double& at(std::size_t t, std::size_t c) { return values[t * classes + c]; }
  double at(std::size_t t, std::size_t c) const {
    return values[t * classes + c];
  }
};

// Track index for every event under the clip-scoped reordering: events are
// visited in (onset, class_id, input index) order and each takes the lowest
// track not yet used in the clip. Throws kOverflow when more than `tracks`
// events share the clip.
std::vector<int> AssignTracks(std::span<const EventInstance> events,
                              std::size_t tracks);

// Builds trackwise labels for one clip of `frames` label frames. A track is
// bound to its event for the whole clip, so a freed track is never reused.
ClipLabels ReorderEvents(std::span<const EventInstance> events,
                         std::size_t tracks, std::size_t frames,
                         std::size_t classes = kDefaultClasses);

// Reorders a long recording clip by clip (`clip_frames` per clip). Events
// that straddle a clip boundary are split and placed independently.
ClipLabels ReorderScene(std::span<const EventInstance> events,
                        std::size_t tracks, std::size_t frames,
                        std::size_t classes = kDefaultClasses,
                        std::size_t clip_frames = kClipLabelFrames);

// Throws kOverflow naming the first frame with more than `tracks` active
// events.
void CheckConcurrency(std::span<const EventInstance> events,
                      std::size_t tracks);

// Splits every track into maximal runs of constant class.
std::vector<EventInstance> ExtractEvents(const ClipLabels& labels);

// Per frame and class, the maximum probability over tracks.
ClassActivity CollapseTracks(const ClipLabels& labels);

// DCASE metadata CSV: "frame,class,source,azimuth,elevation" per line, no
// header, 100 ms frames. Rows sharing (class, source) over contiguous frames
// form one instance.
std::vector<EventInstance> ParseMetadataCsv(
    std::string_view text, std::size_t classes = kDefaultClasses);
std::string SerializeMetadataCsv(std::span<const EventInstance> events);

std::vector<EventInstance> ReadMetadataCsv(
    const std::string& path, std::size_t classes = kDefaultClasses);
void WriteMetadataCsv(const std::string& path,
                      std::span<const EventInstance> events);

}  // namespace seld

#endif  // SELD_TRACKWISE_H_
