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

#include "seld/wav.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "seld/error.h"

namespace seld {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

[[noreturn]] void Fail(const std::string& what) {
  throw Error(ErrorCode::kFormat, "wav", what);
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::uint32_t U32(std::size_t at) const {
    Need(at, 4);
    return static_cast<std::uint32_t>(bytes_[at]) |
           static_cast<std::uint32_t>(bytes_[at + 1]) << 8 |
           static_cast<std::uint32_t>(bytes_[at + 2]) << 16 |
           static_cast<std::uint32_t>(bytes_[at + 3]) << 24;
  }
  std::uint16_t U16(std::size_t at) const {
    Need(at, 2);
    return static_cast<std::uint16_t>(bytes_[at] | bytes_[at + 1] << 8);
  }
  bool Tag(std::size_t at, const char* tag) const {
    Need(at, 4);
    return std::memcmp(&bytes_[at], tag, 4) == 0;
  }
  void Need(std::size_t at, std::size_t n) const {
    if (at + n > bytes_.size()) Fail("truncated file");
  }
  std::size_t size() const { return bytes_.size(); }
  const std::uint8_t* data() const { return bytes_.data(); }

 private:
  const std::vector<std::uint8_t>& bytes_;
};

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}
void PutTag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

AudioClip DecodeWav(const std::vector<std::uint8_t>& bytes) {
  const Reader r(bytes);
  if (!r.Tag(0, "RIFF") || !r.Tag(8, "WAVE")) Fail("not a RIFF/WAVE file");

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t data_at = 0, data_len = 0;
  bool have_fmt = false, have_data = false;
  for (std::size_t at = 12; at + 8 <= r.size();) {
    const std::uint32_t len = r.U32(at + 4);
    const std::size_t body = at + 8;
    if (r.Tag(at, "fmt ")) {
      r.Need(body, 16);
      format = r.U16(body);
      channels = r.U16(body + 2);
      rate = r.U32(body + 4);
      bits = r.U16(body + 14);
      if (format == kFormatExtensible) {
        r.Need(body, 26);
        format = r.U16(body + 24);
      }
      have_fmt = true;
    } else if (r.Tag(at, "data")) {
      data_at = body;
      data_len = std::min<std::size_t>(len, r.size() - body);
      have_data = true;
    }
    at = body + len + (len & 1u);
  }
  if (!have_fmt) Fail("missing fmt chunk");
  if (!have_data) Fail("missing data chunk");
  if (channels == 0) Fail("zero channels");

  const bool pcm = format == kFormatPcm && (bits == 16 || bits == 24);
  const bool flt = format == kFormatFloat && bits == 32;
  if (!pcm && !flt) {
    Fail("unsupported encoding (format " + std::to_string(format) + ", " +
         std::to_string(bits) + " bits)");
  }
  const std::size_t width = bits / 8;
  const std::size_t frames = data_len / (width * channels);
  AudioClip clip(static_cast<int>(rate), channels, frames);
  const std::uint8_t* p = r.data() + data_at;
  for (std::size_t i = 0; i < frames; ++i) {
    for (std::size_t c = 0; c < channels; ++c, p += width) {
      double v = 0.0;
      if (flt) {
        const std::uint32_t u = static_cast<std::uint32_t>(p[0]) |
                                static_cast<std::uint32_t>(p[1]) << 8 |
                                static_cast<std::uint32_t>(p[2]) << 16 |
                                static_cast<std::uint32_t>(p[3]) << 24;
        v = std::bit_cast<float>(u);
      } else if (bits == 16) {
        v = static_cast<std::int16_t>(p[0] | p[1] << 8) / 32768.0;
      } else {
        std::int32_t s = p[0] | p[1] << 8 | p[2] << 16;
        if (s & 0x800000) s -= 0x1000000;
        v = s / 8388608.0;
      }
      clip.channels[c][i] = v;
    }
  }
  return clip;
}

AudioClip ReadWav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "wav", "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return DecodeWav(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), "wav", path + ": " + e.what());
  }
}

std::vector<std::uint8_t> EncodeWav(const AudioClip& clip,
                                    WavSampleFormat format) {
  const std::uint16_t channels = static_cast<std::uint16_t>(clip.num_channels());
  const std::uint16_t bits = format == WavSampleFormat::kPcm16   ? 16
                             : format == WavSampleFormat::kPcm24 ? 24
                                                                 : 32;
  const std::uint16_t width = bits / 8;
  const std::size_t frames = clip.num_samples();
  const std::uint32_t data_len =
      static_cast<std::uint32_t>(frames * channels * width);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_len);
  PutTag(out, "RIFF");
  PutU32(out, 36 + data_len);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, format == WavSampleFormat::kFloat32 ? kFormatFloat : kFormatPcm);
  PutU16(out, channels);
  PutU32(out, static_cast<std::uint32_t>(clip.sample_rate));
  PutU32(out, static_cast<std::uint32_t>(clip.sample_rate) * channels * width);
  PutU16(out, static_cast<std::uint16_t>(channels * width));
  PutU16(out, bits);
  PutTag(out, "data");
  PutU32(out, data_len);
  for (std::size_t i = 0; i < frames; ++i) {
    for (std::size_t c = 0; c < channels; ++c) {
      const double v = clip.channels[c][i];
      if (format == WavSampleFormat::kFloat32) {
        PutU32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
      } else {
        const double full = format == WavSampleFormat::kPcm16 ? 32768.0
                                                              : 8388608.0;
        const double q = std::clamp(std::round(v * full), -full, full - 1.0);
        const std::int32_t s = static_cast<std::int32_t>(q);
        out.push_back(static_cast<std::uint8_t>(s));
        out.push_back(static_cast<std::uint8_t>(s >> 8));
        if (format == WavSampleFormat::kPcm24) {
          out.push_back(static_cast<std::uint8_t>(s >> 16));
        }
      }
    }
  }
  return out;
}

void WriteWav(const std::string& path, const AudioClip& clip,
              WavSampleFormat format) {
  const std::vector<std::uint8_t> bytes = EncodeWav(clip, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "wav", "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "wav", "short write to " + path);
}

}  // namespace seld
