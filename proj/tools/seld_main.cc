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

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "seld/error.h"
#include "seld/pipeline.h"

namespace {

void AddCommonOptions(CLI::App* cmd, seld::PipelineConfig& cfg,
                      std::string& config_file, std::uint64_t& seed) {
  cmd->add_option("--config", config_file,
                  "JSON config; its keys override command-line flags");
  cmd->add_option("--scene", cfg.scene_path, "scene JSON");
  cmd->add_option("--foa", cfg.foa_wav, "4-channel FoA WAV");
  cmd->add_option("--mic", cfg.mic_wav, "4-channel tetrahedral array WAV");
  cmd->add_option("--reference", cfg.reference_csv, "reference metadata CSV");
  cmd->add_option("--prediction", cfg.prediction_csv,
                  "predicted metadata CSV");
  cmd->add_option("--output-dir", cfg.output_dir,
                  std::string("artifact directory (default $") +
                      seld::kOutputDirEnv + " or seld_out)");
  cmd->add_option("--window", cfg.window_s, "STFT window in seconds")
      ->capture_default_str();
  cmd->add_option("--hop", cfg.hop_s, "STFT hop in seconds")
      ->capture_default_str();
  cmd->add_option("--mels", cfg.mel_bands, "mel bands")->capture_default_str();
  cmd->add_option("--label-hop", cfg.label_hop_s, "label frame in seconds")
      ->capture_default_str();
  cmd->add_option("--tracks", cfg.tracks, "trackwise output tracks")
      ->capture_default_str();
  cmd->add_option("--classes", cfg.classes, "sound event classes")
      ->capture_default_str();
  cmd->add_option("--speed-of-sound", cfg.speed_of_sound, "m/s")
      ->capture_default_str();
  cmd->add_option("--array-radius", cfg.array_radius_m,
                  "tetrahedral array radius in meters (without --scene)")
      ->capture_default_str();
  cmd->add_option("--source-distance", cfg.source_distance_m,
                  "assumed source distance for steering, meters")
      ->capture_default_str();
  cmd->add_option("--activity-threshold-db", cfg.activity_threshold_db,
                  "DoA oracle band gate relative to the peak")
      ->capture_default_str();
  cmd->add_option("--doa-threshold", cfg.doa_threshold_deg,
                  "location-aware detection threshold, degrees")
      ->capture_default_str();
  cmd->add_flag("--acn", cfg.acn_input, "FoA WAVs use ACN order (W, Y, Z, X)");
  cmd->add_option("--seed", seed, "overrides the scene seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sound event localization and detection toolkit"};
  app.require_subcommand(1);

  seld::PipelineConfig cfg;
  std::string config_file;
  std::uint64_t seed = 0;

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"simulate", "render FoA and array recordings plus reference labels"},
      {"features", "log-mel and intensity features, oracle DoA predictions"},
      {"beamform", "trackwise delay-and-sum beams from predicted trajectories"},
      {"reorder", "metadata CSV to a trackwise tensor"},
      {"evaluate", "SELD and DoA metrics of predictions against references"},
      {"pipeline", "simulate, features, beamform and evaluate in sequence"},
  };
  for (const Sub& s : subs) {
    AddCommonOptions(app.add_subcommand(s.name, s.help), cfg, config_file,
                     seed);
  }

  CLI11_PARSE(app, argc, argv);
  CLI::App* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();

  try {
    if (cmd->count("--seed") > 0) cfg.seed = seed;
    if (!config_file.empty()) seld::ApplyPipelineConfigFile(cfg, config_file);
    if (cfg.output_dir.empty()) cfg.output_dir = seld::DefaultOutputDir();

    if (name == "simulate") {
      seld::RunSimulate(cfg);
    } else if (name == "features") {
      seld::RunFeatures(cfg);
    } else if (name == "beamform") {
      seld::RunBeamform(cfg);
    } else if (name == "reorder") {
      seld::RunReorder(cfg);
    } else if (name == "evaluate") {
      std::cout << seld::RunEvaluate(cfg).ToKeyValue();
    } else {
      std::cout << seld::RunPipeline(cfg).ToKeyValue();
    }
  } catch (const seld::Error& e) {
    std::cerr << "error [" << seld::ErrorCodeName(e.code()) << "] " << e.what()
              << "\n";
    if (!cfg.output_dir.empty()) {
      try {
        seld::RunLog(cfg.output_dir).Write(name, "error", e.what());
      } catch (...) {
      }
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
