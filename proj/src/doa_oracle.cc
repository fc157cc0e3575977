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

#include "seld/doa_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seld/error.h"

namespace seld {

ClipLabels EstimateDoaIv(const FeatureTensor& ivs, const FeatureTensor& logmels,
                         const DoaOracleOptions& opts) {
  if (ivs.channels != 3 || logmels.channels == 0 ||
      ivs.frames != logmels.frames || ivs.bands != logmels.bands) {
    throw Error(ErrorCode::kShape, "doa_oracle",
                "intensity and log-mel tensors are not aligned");
  }
  if (opts.frames_per_label == 0) {
    throw Error(ErrorCode::kConfiguration, "doa_oracle",
                "frames_per_label must be positive");
  }
  const std::size_t ratio = opts.frames_per_label;
  const std::size_t label_frames =
      opts.label_frames ? opts.label_frames
                        : (ivs.frames + ratio - 1) / ratio;
  ClipLabels out(1, label_frames, 1);

  // Log-mel channel 0 is the omnidirectional W band energy (natural log).
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < logmels.frames; ++t) {
    for (std::size_t b = 0; b < logmels.bands; ++b) {
      peak = std::max(peak, logmels.at(0, t, b));
    }
  }
  const double gate = peak + opts.activity_threshold_db * std::log(10.0) / 10.0;

  for (std::size_t lf = 0; lf < label_frames; ++lf) {
    DirectionVector acc;
    bool any = false;
    const std::size_t begin = lf * ratio;
    const std::size_t end = std::min(ivs.frames, begin + ratio);
    for (std::size_t t = begin; t < end; ++t) {
      for (std::size_t b = 0; b < ivs.bands; ++b) {
        const double log_energy = logmels.at(0, t, b);
        if (log_energy < gate) continue;
        const double energy = std::exp(log_energy - peak);
        acc = acc + DirectionVector{ivs.at(0, t, b), ivs.at(1, t, b),
                                    ivs.at(2, t, b)} *
                        energy;
        any = true;
      }
    }
    const DirectionVector dir = acc.Normalized();
    if (any && !dir.IsInactive()) out.SetEvent(0, lf, 0, dir);
  }
  return out;
}

}  // namespace seld
