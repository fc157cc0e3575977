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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "seld/error.h"
#include "seld/scene_sim.h"
#include "seld/wav.h"

namespace seld {

namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& what) {
  throw Error(ErrorCode::kParse, "scene_sim", "scene JSON: " + what);
}

AzEl ParseAzEl(const json& j) {
  return {j.at("azimuth").get<double>(), j.at("elevation").get<double>()};
}

SignalSpec ParseSignal(const json& j, const std::string& base_dir,
                       int sample_rate) {
  SignalSpec s;
  const std::string type = j.value("type", "noise");
  s.amplitude = j.value("amplitude", s.amplitude);
  if (type == "noise") {
    s.kind = SignalSpec::Kind::kNoise;
  } else if (type == "tone") {
    s.kind = SignalSpec::Kind::kTone;
    s.frequency_hz = j.value("frequency", s.frequency_hz);
  } else if (type == "wav") {
    s.kind = SignalSpec::Kind::kSamples;
    s.amplitude = j.value("amplitude", 1.0);
    std::filesystem::path p = j.at("path").get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    const AudioClip clip = ReadWav(p.string());
    if (clip.sample_rate != sample_rate) {
      Fail(p.string() + " is at " + std::to_string(clip.sample_rate) +
           " Hz; the scene runs at " + std::to_string(sample_rate) +
           " Hz and no resampler is provided");
    }
    if (clip.num_channels() != 1) Fail(p.string() + " must be mono");
    s.samples = clip.channels[0];
  } else {
    Fail("unknown signal type '" + type + "'");
  }
  return s;
}

}  // namespace

SceneConfig ParseSceneJson(std::string_view text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    Fail(e.what());
  }
  SceneConfig scene;
  try {
    scene.duration_s = j.at("duration").get<double>();
    scene.sample_rate = j.value("sample_rate", scene.sample_rate);
    scene.seed = j.value("seed", scene.seed);
    scene.array_radius_m = j.value("array_radius", scene.array_radius_m);
    if (j.contains("noise_snr_db") && !j["noise_snr_db"].is_null()) {
      scene.noise_snr_db = j["noise_snr_db"].get<double>();
    }
    for (const json& ej : j.value("events", json::array())) {
      EventSpec e;
      e.class_id = ej.at("class").get<int>();
      e.source_id = ej.value("source", -1);
      e.onset_s = ej.at("onset").get<double>();
      e.offset_s = ej.at("offset").get<double>();
      if (ej.contains("trajectory")) {
        for (const json& w : ej["trajectory"]) {
          e.trajectory.push_back({w.at("time").get<double>(), ParseAzEl(w)});
        }
      } else {
        e.trajectory.push_back({e.onset_s, ParseAzEl(ej.at("direction"))});
      }
      if (ej.contains("signal")) {
        e.signal = ParseSignal(ej["signal"], base_dir, scene.sample_rate);
      }
      scene.events.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    Fail(e.what());
  }
  ValidateScene(scene);
  return scene;
}

SceneConfig LoadSceneJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "scene_sim", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::filesystem::path base =
      std::filesystem::path(path).parent_path();
  return ParseSceneJson(ss.str(), base.empty() ? "." : base.string());
}

}  // namespace seld
