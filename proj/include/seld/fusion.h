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

#ifndef SELD_FUSION_H_
#define SELD_FUSION_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "seld/trackwise.h"

namespace seld {

using Matrix = Eigen::MatrixXd;

struct FusionConfig {
  std::size_t cnn_channels = 64;
  std::size_t guide_dim = 64;  // D_SED = D_DoA
  std::size_t tracks = kDefaultTracks;
  std::size_t classes = kDefaultClasses;
};

// Projections applied to row-vector features (x * W).
struct FusionWeights {
  Matrix query;        // C x C
  Matrix key;          // D x C
  Matrix value;        // D x C
  Matrix output;       // C x C
  Matrix gate;         // C x C
  Matrix guide_embed;  // (3 + classes) x D
};

// Throws kShape when a projection disagrees with `cfg`.
void ValidateFusionWeights(const FusionConfig& cfg, const FusionWeights& w);

// Gaussian entries scaled by 1/sqrt(fan_in), deterministic in `seed`.
FusionWeights RandomFusionWeights(const FusionConfig& cfg, std::uint64_t seed);

// One SELDTNSR file per projection (query, key, value, output, gate,
// guide_embed) inside `dir`.
void SaveFusionWeights(const std::string& dir, const FusionWeights& w);
FusionWeights LoadFusionWeights(const std::string& dir,
                                const FusionConfig& cfg);

// One guide token per track for label frame `frame`: the track's (x, y, z)
// and class probabilities, embedded to D dimensions. Result is K x D.
Matrix GuideTokens(const ClipLabels& labels, std::size_t frame,
                   const FusionWeights& w);

// Row-softmax of (cnn Wq)(guide Wk)^T / sqrt(C). N x L.
Matrix SaamAttention(const Matrix& cnn_feat, const Matrix& guide_feat,
                     const FusionWeights& w);

// Spatial-acoustic cross-attention: (A (guide Wv)) Wo. N x C.
Matrix SaamForward(const Matrix& cnn_feat, const Matrix& guide_feat,
                   const FusionWeights& w);

// Feature interaction gate: cnn + tanh(attended Wg) .* attended.
Matrix FigFuse(const Matrix& cnn_feat, const Matrix& attended,
               const FusionWeights& w);

// SAAM followed by FIG; output has the shape of `cnn_feat`, so stages chain.
Matrix FusionStage(const Matrix& cnn_feat, const Matrix& guide_feat,
                   const FusionWeights& w);

}  // namespace seld

#endif  // SELD_FUSION_H_
