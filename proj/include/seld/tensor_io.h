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

#ifndef SELD_TENSOR_IO_H_
#define SELD_TENSOR_IO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "seld/audio.h"

namespace seld {

// Flat binary tensor file:
//   "SELDTNSR" | u32 rank | u32 dims[rank] | f32 values (row-major)
// All integers and floats little-endian.
struct Tensor {
  std::vector<std::uint32_t> shape;
  std::vector<float> values;

  std::size_t element_count() const;
};

std::vector<std::uint8_t> EncodeTensor(const Tensor& t);
Tensor DecodeTensor(const std::vector<std::uint8_t>& bytes);

void WriteTensor(const std::string& path, const Tensor& t);
Tensor ReadTensor(const std::string& path);

Tensor ToTensor(const FeatureTensor& f);

}  // namespace seld

#endif  // SELD_TENSOR_IO_H_
