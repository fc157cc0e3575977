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

#include "seld/fusion.h"

#include <cmath>
#include <filesystem>
#include <random>

#include "seld/error.h"
#include "seld/tensor_io.h"

namespace seld {

namespace {

void ExpectShape(const Matrix& m, std::size_t rows, std::size_t cols,
                 const char* name) {
  if (static_cast<std::size_t>(m.rows()) != rows ||
      static_cast<std::size_t>(m.cols()) != cols) {
    throw Error(ErrorCode::kShape, "fusion",
                std::string(name) + " is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void CheckFinite(const Matrix& m, const char* name) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::kValidation, "fusion",
                std::string(name) + " has non-finite entries");
  }
}

Matrix RandomMatrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(double(rows)));
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = normal(rng);
  }
  return m;
}

constexpr const char* kNames[] = {"query", "key",  "value",
                                  "output", "gate", "guide_embed"};

Matrix* Slot(FusionWeights& w, int i) {
  Matrix* slots[] = {&w.query, &w.key, &w.value, &w.output, &w.gate,
                     &w.guide_embed};
  return slots[i];
}

}  // namespace

void ValidateFusionWeights(const FusionConfig& cfg, const FusionWeights& w) {
  const std::size_t c = cfg.cnn_channels;
  const std::size_t d = cfg.guide_dim;
  ExpectShape(w.query, c, c, "query");
  ExpectShape(w.key, d, c, "key");
  ExpectShape(w.value, d, c, "value");
  ExpectShape(w.output, c, c, "output");
  ExpectShape(w.gate, c, c, "gate");
  ExpectShape(w.guide_embed, 3 + cfg.classes, d, "guide_embed");
}

FusionWeights RandomFusionWeights(const FusionConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t c = cfg.cnn_channels;
  const std::size_t d = cfg.guide_dim;
  FusionWeights w;
  w.query = RandomMatrix(c, c, rng);
  w.key = RandomMatrix(d, c, rng);
  w.value = RandomMatrix(d, c, rng);
  w.output = RandomMatrix(c, c, rng);
  w.gate = RandomMatrix(c, c, rng);
  w.guide_embed = RandomMatrix(3 + cfg.classes, d, rng);
  return w;
}

void SaveFusionWeights(const std::string& dir, const FusionWeights& w) {
  std::filesystem::create_directories(dir);
  FusionWeights copy = w;
  for (int i = 0; i < 6; ++i) {
    const Matrix& m = *Slot(copy, i);
    Tensor t;
    t.shape = {static_cast<std::uint32_t>(m.rows()),
               static_cast<std::uint32_t>(m.cols())};
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index col = 0; col < m.cols(); ++col) {
        t.values.push_back(static_cast<float>(m(r, col)));
      }
    }
    WriteTensor((std::filesystem::path(dir) / (std::string(kNames[i]) +
                                               ".seldtnsr")).string(), t);
  }
}

FusionWeights LoadFusionWeights(const std::string& dir,
                                const FusionConfig& cfg) {
  FusionWeights w;
  for (int i = 0; i < 6; ++i) {
    const Tensor t = ReadTensor(
        (std::filesystem::path(dir) / (std::string(kNames[i]) + ".seldtnsr"))
            .string());
    if (t.shape.size() != 2) {
      throw Error(ErrorCode::kShape, "fusion",
                  std::string(kNames[i]) + " must be a 2-D tensor");
    }
    Matrix& m = *Slot(w, i);
    m.resize(t.shape[0], t.shape[1]);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        m(r, c) = t.values[static_cast<std::size_t>(r * m.cols() + c)];
      }
    }
  }
  ValidateFusionWeights(cfg, w);
  return w;
}

Matrix GuideTokens(const ClipLabels& labels, std::size_t frame,
                   const FusionWeights& w) {
  const auto width = static_cast<Eigen::Index>(3 + labels.num_classes());
  if (w.guide_embed.rows() != width) {
    throw Error(ErrorCode::kShape, "fusion",
                "guide embedding expects " +
                    std::to_string(w.guide_embed.rows() - 3) + " classes");
  }
  if (frame >= labels.num_frames()) {
    throw Error(ErrorCode::kRange, "fusion", "frame out of range");
  }
  Matrix raw(static_cast<Eigen::Index>(labels.num_tracks()), width);
  for (std::size_t k = 0; k < labels.num_tracks(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    const DirectionVector& d = labels.direction(k, frame);
    raw(row, 0) = d.x;
    raw(row, 1) = d.y;
    raw(row, 2) = d.z;
    for (std::size_t c = 0; c < labels.num_classes(); ++c) {
      raw(row, static_cast<Eigen::Index>(3 + c)) = labels.class_prob(k, frame, c);
    }
  }
  return raw * w.guide_embed;
}

Matrix SaamAttention(const Matrix& cnn_feat, const Matrix& guide_feat,
                     const FusionWeights& w) {
  if (guide_feat.rows() < 1) {
    throw Error(ErrorCode::kShape, "fusion", "at least one guide token needed");
  }
  if (cnn_feat.cols() != w.query.rows() || guide_feat.cols() != w.key.rows() ||
      w.query.cols() != w.key.cols()) {
    throw Error(ErrorCode::kShape, "fusion",
                "feature widths do not match the projections");
  }
  CheckFinite(cnn_feat, "cnn features");
  CheckFinite(guide_feat, "guide features");
  const Matrix q = cnn_feat * w.query;
  const Matrix k = guide_feat * w.key;
  Matrix logits = (q * k.transpose()) / std::sqrt(double(w.query.cols()));
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double peak = logits.row(i).maxCoeff();
    logits.row(i) = (logits.row(i).array() - peak).exp().matrix();
    logits.row(i) /= logits.row(i).sum();
  }
  return logits;
}

Matrix SaamForward(const Matrix& cnn_feat, const Matrix& guide_feat,
                   const FusionWeights& w) {
  if (guide_feat.cols() != w.value.rows()) {
    throw Error(ErrorCode::kShape, "fusion",
                "guide width does not match the value projection");
  }
  const Matrix attention = SaamAttention(cnn_feat, guide_feat, w);
  return (attention * (guide_feat * w.value)) * w.output;
}

Matrix FigFuse(const Matrix& cnn_feat, const Matrix& attended,
               const FusionWeights& w) {
  if (cnn_feat.rows() != attended.rows() || cnn_feat.cols() != attended.cols() ||
      attended.cols() != w.gate.rows() || w.gate.rows() != w.gate.cols()) {
    throw Error(ErrorCode::kShape, "fusion",
                "gate inputs and projection shapes disagree");
  }
  const Matrix gate = (attended * w.gate).array().tanh().matrix();
  return cnn_feat + gate.cwiseProduct(attended);
}

Matrix FusionStage(const Matrix& cnn_feat, const Matrix& guide_feat,
                   const FusionWeights& w) {
  return FigFuse(cnn_feat, SaamForward(cnn_feat, guide_feat, w), w);
}

}  // namespace seld
