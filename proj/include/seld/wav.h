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

#ifndef SELD_WAV_H_
#define SELD_WAV_H_

#include <cstdint>
#include <string>
#include <vector>

#include "seld/audio.h"

namespace seld {

enum class WavSampleFormat { kPcm16, kPcm24, kFloat32 };

// RIFF/WAVE, PCM 16/24-bit or IEEE float 32-bit, any channel count.
// WAVE_FORMAT_EXTENSIBLE headers are accepted on read.
AudioClip ReadWav(const std::string& path);
AudioClip DecodeWav(const std::vector<std::uint8_t>& bytes);

void WriteWav(const std::string& path, const AudioClip& clip,
              WavSampleFormat format = WavSampleFormat::kFloat32);
std::vector<std::uint8_t> EncodeWav(
    const AudioClip& clip, WavSampleFormat format = WavSampleFormat::kFloat32);

}  // namespace seld

#endif  // SELD_WAV_H_
