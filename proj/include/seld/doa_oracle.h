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

#ifndef SELD_DOA_ORACLE_H_
#define SELD_DOA_ORACLE_H_

#include <cstddef>

#include "seld/audio.h"
#include "seld/trackwise.h"

namespace seld {

struct DoaOracleOptions {
  double activity_threshold_db = -40.0;
  // STFT frames per label frame (0.1 s / 0.02 s).
  std::size_t frames_per_label = 5;
  // Label frames to produce; 0 means ceil(T / frames_per_label).
  std::size_t label_frames = 0;
};

// Single-source direction estimate per label frame from FoA intensity
// vectors: the W-band-energy weighted mean of band intensity vectors over
// bands within `activity_threshold_db` of the clip's peak band energy,
// normalized. Frames with no qualifying band are inactive. The result is a
// one-track, one-class ClipLabels.
ClipLabels EstimateDoaIv(const FeatureTensor& ivs, const FeatureTensor& logmels,
                         const DoaOracleOptions& opts = {});

}  // namespace seld

#endif  // SELD_DOA_ORACLE_H_
