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

#include "seld/tensor_io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "seld/error.h"

namespace seld {

namespace {

constexpr char kMagic[8] = {'S', 'E', 'L', 'D', 'T', 'N', 'S', 'R'};

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t GetU32(const std::vector<std::uint8_t>& in, std::size_t at) {
  if (at + 4 > in.size()) {
    throw Error(ErrorCode::kFormat, "tensor_io", "truncated tensor file");
  }
  return static_cast<std::uint32_t>(in[at]) |
         static_cast<std::uint32_t>(in[at + 1]) << 8 |
         static_cast<std::uint32_t>(in[at + 2]) << 16 |
         static_cast<std::uint32_t>(in[at + 3]) << 24;
}

}  // namespace

std::size_t Tensor::element_count() const {
  std::size_t n = 1;
  for (std::uint32_t d : shape) n *= d;
  return n;
}

std::vector<std::uint8_t> EncodeTensor(const Tensor& t) {
  if (t.element_count() != t.values.size()) {
    throw Error(ErrorCode::kShape, "tensor_io",
                "shape holds " + std::to_string(t.element_count()) +
                    " elements but " + std::to_string(t.values.size()) +
                    " values were given");
  }
  std::vector<std::uint8_t> out(kMagic, kMagic + sizeof(kMagic));
  PutU32(out, static_cast<std::uint32_t>(t.shape.size()));
  for (std::uint32_t d : t.shape) PutU32(out, d);
  for (float v : t.values) PutU32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

Tensor DecodeTensor(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < sizeof(kMagic) ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw Error(ErrorCode::kFormat, "tensor_io", "bad magic");
  }
  Tensor t;
  std::size_t at = sizeof(kMagic);
  const std::uint32_t rank = GetU32(bytes, at);
  at += 4;
  for (std::uint32_t i = 0; i < rank; ++i, at += 4) {
    t.shape.push_back(GetU32(bytes, at));
  }
  const std::size_t n = t.element_count();
  if (bytes.size() != at + 4 * n) {
    throw Error(ErrorCode::kFormat, "tensor_io",
                "payload size does not match shape");
  }
  t.values.resize(n);
  for (std::size_t i = 0; i < n; ++i, at += 4) {
    t.values[i] = std::bit_cast<float>(GetU32(bytes, at));
  }
  return t;
}

void WriteTensor(const std::string& path, const Tensor& t) {
  const std::vector<std::uint8_t> bytes = EncodeTensor(t);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "tensor_io", "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

Tensor ReadTensor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "tensor_io", "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return DecodeTensor(bytes);
}

Tensor ToTensor(const FeatureTensor& f) {
  Tensor t;
  t.shape = {static_cast<std::uint32_t>(f.channels),
             static_cast<std::uint32_t>(f.frames),
             static_cast<std::uint32_t>(f.bands)};
  t.values.assign(f.values.begin(), f.values.end());
  return t;
}

}  // namespace seld
