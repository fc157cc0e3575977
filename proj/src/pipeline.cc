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

#include "seld/pipeline.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "seld/doa_oracle.h"
#include "seld/dsp.h"
#include "seld/error.h"
#include "seld/tensor_io.h"
#include "seld/wav.h"

namespace seld {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kClipSeconds = 5.0;
constexpr std::uint64_t kProbeNoiseSalt = 0x70726f6265ULL;

std::string OutPath(const PipelineConfig& cfg, const char* name) {
  return (fs::path(cfg.output_dir) / name).string();
}

std::string InputOr(const std::string& given, const PipelineConfig& cfg,
                    const char* name) {
  return given.empty() ? OutPath(cfg, name) : given;
}

void EnsureOutputDir(const PipelineConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cli",
                "cannot create output directory " + cfg.output_dir);
  }
}

void RequireFile(const std::string& path, const char* what) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kIo, "cli",
                std::string(what) + " not found: " + path);
  }
}

std::size_t IntegerRatio(double num, double den, const char* what) {
  const double r = num / den;
  const double rounded = std::round(r);
  if (rounded < 1.0 || std::abs(r - rounded) > 1e-9) {
    throw Error(ErrorCode::kConfiguration, "cli",
                std::string(what) + " must be an integer multiple");
  }
  return static_cast<std::size_t>(rounded);
}

std::size_t ClipFrames(const PipelineConfig& cfg) {
  return IntegerRatio(kClipSeconds, cfg.label_hop_s,
                      "clip length over label hop");
}

SceneConfig LoadScene(const PipelineConfig& cfg) {
  SceneConfig scene = LoadSceneJson(cfg.scene_path);
  if (cfg.seed) scene.seed = *cfg.seed;
  return scene;
}

RenderOptions RenderOpts(const PipelineConfig& cfg) {
  RenderOptions r;
  r.window_s = cfg.window_s;
  r.hop_s = cfg.hop_s;
  r.speed_of_sound = cfg.speed_of_sound;
  return r;
}

BeamformOptions BeamOpts(const PipelineConfig& cfg) {
  BeamformOptions b;
  b.speed_of_sound = cfg.speed_of_sound;
  b.source_distance_m = cfg.source_distance_m;
  b.label_hop_s = cfg.label_hop_s;
  return b;
}

std::vector<EventInstance> ReadEventsIfPresent(const std::string& path,
                                               std::size_t classes) {
  if (path.empty() || !fs::exists(path)) return {};
  return ReadMetadataCsv(path, classes);
}

int MaxOffset(std::span<const EventInstance> events) {
  int m = 0;
  for (const EventInstance& e : events) m = std::max(m, e.offset_frame);
  return m;
}

std::string JsonEscape(std::string_view s) {
  return json(std::string(s)).dump();
}

double MeanPower(const std::vector<double>& x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return x.empty() ? 0.0 : acc / static_cast<double>(x.size());
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cli", "cannot write " + path);
  out << text;
}

std::string FormatDb(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string DefaultOutputDir() {
  const char* env = std::getenv(kOutputDirEnv);
  return (env && *env) ? std::string(env) : std::string("seld_out");
}

void ApplyPipelineJson(PipelineConfig& cfg, std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, "cli",
                std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::kConfiguration, "cli", "config must be an object");
  }
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "scene") cfg.scene_path = value.get<std::string>();
      else if (key == "foa_wav") cfg.foa_wav = value.get<std::string>();
      else if (key == "mic_wav") cfg.mic_wav = value.get<std::string>();
      else if (key == "reference_csv") cfg.reference_csv = value.get<std::string>();
      else if (key == "prediction_csv") cfg.prediction_csv = value.get<std::string>();
      else if (key == "output_dir") cfg.output_dir = value.get<std::string>();
      else if (key == "window_s") cfg.window_s = value.get<double>();
      else if (key == "hop_s") cfg.hop_s = value.get<double>();
      else if (key == "mel_bands") cfg.mel_bands = value.get<std::size_t>();
      else if (key == "label_hop_s") cfg.label_hop_s = value.get<double>();
      else if (key == "tracks") cfg.tracks = value.get<std::size_t>();
      else if (key == "classes") cfg.classes = value.get<std::size_t>();
      else if (key == "speed_of_sound") cfg.speed_of_sound = value.get<double>();
      else if (key == "array_radius_m") cfg.array_radius_m = value.get<double>();
      else if (key == "source_distance_m") cfg.source_distance_m = value.get<double>();
      else if (key == "activity_threshold_db") cfg.activity_threshold_db = value.get<double>();
      else if (key == "doa_threshold_deg") cfg.doa_threshold_deg = value.get<double>();
      else if (key == "acn_input") cfg.acn_input = value.get<bool>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else {
        throw Error(ErrorCode::kConfiguration, "cli",
                    "unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfiguration, "cli",
                std::string("bad config value: ") + e.what());
  }
}

void ApplyPipelineConfigFile(PipelineConfig& cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cli", "cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  ApplyPipelineJson(cfg, ss.str());
}

void ValidatePipelineConfig(const PipelineConfig& cfg) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kConfiguration, "cli",
                  std::string(name) + " must be positive");
    }
  };
  positive(cfg.window_s, "window_s");
  positive(cfg.hop_s, "hop_s");
  positive(cfg.label_hop_s, "label_hop_s");
  positive(cfg.speed_of_sound, "speed_of_sound");
  positive(cfg.array_radius_m, "array_radius_m");
  positive(cfg.source_distance_m, "source_distance_m");
  positive(cfg.doa_threshold_deg, "doa_threshold_deg");
  if (cfg.mel_bands == 0 || cfg.tracks == 0 || cfg.classes == 0) {
    throw Error(ErrorCode::kConfiguration, "cli",
                "mel_bands, tracks and classes must be at least 1");
  }
  if (cfg.hop_s > cfg.window_s) {
    throw Error(ErrorCode::kConfiguration, "cli", "hop exceeds window");
  }
  IntegerRatio(cfg.label_hop_s, cfg.hop_s, "label hop over STFT hop");
  ClipFrames(cfg);
  if (cfg.output_dir.empty()) {
    throw Error(ErrorCode::kConfiguration, "cli", "empty output directory");
  }
}

void RunLog::Truncate() const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  std::ofstream((fs::path(dir_) / artifact::kLog).string(), std::ios::trunc);
}

void RunLog::Write(std::string_view stage, std::string_view level,
                   std::string_view message) const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  std::ofstream out((fs::path(dir_) / artifact::kLog).string(),
                    std::ios::app | std::ios::binary);
  out << "{\"stage\":" << JsonEscape(stage) << ",\"level\":"
      << JsonEscape(level) << ",\"message\":" << JsonEscape(message) << "}\n";
}

std::string BeamformReport::ToKeyValue() const {
  std::ostringstream out;
  out << "active_tracks=" << tracks.size() << "\n";
  for (const TrackSnr& t : tracks) {
    const std::string p = "track" + std::to_string(t.track) + "_";
    out << p << "active_frames=" << t.active_frames << "\n";
    out << p << "input_snr_db=" << FormatDb(t.input_snr_db) << "\n";
    out << p << "output_snr_db=" << FormatDb(t.output_snr_db) << "\n";
    out << p << "snr_gain_db=" << FormatDb(t.gain_db) << "\n";
  }
  out << "noise_suppression_db="
      << (noise_suppression_db ? FormatDb(*noise_suppression_db)
                               : std::string("undefined"))
      << "\n";
  return out.str();
}

BeamformReport ComputeBeamformReport(const AudioClip& clean,
                                     const AudioClip& noise,
                                     const ClipLabels& trajectories,
                                     const MicArrayGeometry& geom,
                                     const BeamformOptions& opts,
                                     double window_s, double hop_s) {
  if (clean.num_channels() != noise.num_channels() ||
      clean.num_samples() != noise.num_samples()) {
    throw Error(ErrorCode::kShape, "beamform",
                "clean and noise captures differ in shape");
  }
  const SpectralTensor xs = Stft(clean, window_s, hop_s);
  const SpectralTensor xn = Stft(noise, window_s, hop_s);
  const SteeringField field = ComputeSteeringField(xs, trajectories, geom, opts);
  const SpectralTensor ys = DsBeamform(xs, field);
  const SpectralTensor yn = DsBeamform(xn, field);
  const std::size_t ratio = IntegerRatio(opts.label_hop_s, hop_s,
                                         "label hop over STFT hop");
  const std::size_t m_count = xs.channels();

  BeamformReport report;
  double total_in_noise = 0.0;
  double total_out_noise = 0.0;
  for (std::size_t k = 0; k < trajectories.num_tracks(); ++k) {
    double in_s = 0.0, in_n = 0.0, out_s = 0.0, out_n = 0.0;
    std::size_t active = 0;
    for (std::size_t t = 0; t < xs.frames(); ++t) {
      const std::size_t lf =
          HeldLabelFrame(t, ratio, trajectories.num_frames());
      if (!trajectories.active(k, lf)) continue;
      ++active;
      const double w2 = field.weight(k, t) * field.weight(k, t);
      for (std::size_t f = 0; f < xs.bins(); ++f) {
        for (std::size_t m = 0; m < m_count; ++m) {
          in_s += std::norm(xs.at(m, t, f)) / static_cast<double>(m_count);
          in_n += std::norm(xn.at(m, t, f)) / static_cast<double>(m_count);
        }
        out_s += std::norm(ys.at(k, t, f)) / w2;
        out_n += std::norm(yn.at(k, t, f)) / w2;
      }
    }
    if (active == 0) continue;
    TrackSnr snr;
    snr.track = k;
    snr.active_frames = active;
    snr.input_snr_db = 10.0 * std::log10(in_s / in_n);
    snr.output_snr_db = 10.0 * std::log10(out_s / out_n);
    snr.gain_db = snr.output_snr_db - snr.input_snr_db;
    report.tracks.push_back(snr);
    total_in_noise += in_n;
    total_out_noise += out_n;
  }
  if (total_out_noise > 0.0) {
    report.noise_suppression_db =
        10.0 * std::log10(total_in_noise / total_out_noise);
  }
  return report;
}

std::vector<EventInstance> OraclePredictions(
    const ClipLabels& oracle, std::span<const EventInstance> reference) {
  std::vector<EventInstance> out;
  std::map<std::pair<int, int>, std::size_t> open;
  for (std::size_t t = 0; t < oracle.num_frames(); ++t) {
    if (!oracle.active(0, t)) continue;
    const DirectionVector est = oracle.direction(0, t);
    const EventInstance* best = nullptr;
    double best_angle = 0.0;
    for (const EventInstance& e : reference) {
      const int ti = static_cast<int>(t);
      if (ti < e.onset_frame || ti >= e.offset_frame) continue;
      const double a = AngularDistance(
          est, e.directions[static_cast<std::size_t>(ti - e.onset_frame)]);
      if (!best || a < best_angle) {
        best = &e;
        best_angle = a;
      }
    }
    if (!best) continue;
    const std::pair<int, int> key{best->class_id, best->source_id};
    auto it = open.find(key);
    if (it != open.end() &&
        out[it->second].offset_frame == static_cast<int>(t)) {
      EventInstance& e = out[it->second];
      e.offset_frame += 1;
      e.directions.push_back(est);
      continue;
    }
    EventInstance e;
    e.class_id = best->class_id;
    e.source_id = best->source_id;
    e.onset_frame = static_cast<int>(t);
    e.offset_frame = e.onset_frame + 1;
    e.directions.push_back(est);
    open[key] = out.size();
    out.push_back(std::move(e));
  }
  return out;
}

std::size_t LabelFramesForSamples(std::size_t num_samples, int sample_rate,
                                  double label_hop_s) {
  const double exact =
      static_cast<double>(num_samples) / (label_hop_s * sample_rate);
  const double rounded = std::round(exact);
  return static_cast<std::size_t>(std::abs(exact - rounded) < 1e-9
                                      ? rounded
                                      : std::ceil(exact));
}

void RunSimulate(const PipelineConfig& cfg) {
  ValidatePipelineConfig(cfg);
  if (cfg.scene_path.empty()) {
    throw Error(ErrorCode::kConfiguration, "cli", "simulate needs --scene");
  }
  RequireFile(cfg.scene_path, "scene config");
  EnsureOutputDir(cfg);
  const RunLog log(cfg.output_dir);
  const SceneConfig scene = LoadScene(cfg);
  log.Write("simulate", "info",
            "scene " + cfg.scene_path + " with " +
                std::to_string(scene.events.size()) + " events, seed " +
                std::to_string(scene.seed));
  std::vector<std::string> warnings;
  AudioClip foa = EncodeFoa(scene, &warnings);
  const MicArrayGeometry geom =
      MicArrayGeometry::Tetrahedral(scene.array_radius_m);
  std::vector<std::string> mic_warnings;
  const AudioClip mic = RenderMicArray(scene, geom, RenderOpts(cfg),
                                       &mic_warnings);
  for (const std::string& w : warnings) log.Write("simulate", "warning", w);
  if (cfg.acn_input) foa = WxyzToAcn(foa);
  WriteWav(OutPath(cfg, artifact::kFoaWav), foa);
  WriteWav(OutPath(cfg, artifact::kMicWav), mic);
  const std::vector<EventInstance> events =
      GroundTruthEvents(scene, cfg.label_hop_s);
  WriteMetadataCsv(OutPath(cfg, artifact::kReferenceCsv), events);
  log.Write("simulate", "info",
            "wrote " + std::to_string(events.size()) + " reference events");
}

void RunFeatures(const PipelineConfig& cfg) {
  ValidatePipelineConfig(cfg);
  EnsureOutputDir(cfg);
  const RunLog log(cfg.output_dir);
  const std::string foa_path = InputOr(cfg.foa_wav, cfg, artifact::kFoaWav);
  RequireFile(foa_path, "FoA recording");
  AudioClip foa = ReadWav(foa_path);
  if (foa.num_channels() != 4) {
    throw Error(ErrorCode::kFormat, "dsp_core",
                foa_path + " has " + std::to_string(foa.num_channels()) +
                    " channels, FoA needs 4");
  }
  if (cfg.acn_input) foa = AcnToWxyz(foa);
  const SpectralTensor spec = Stft(foa, cfg.window_s, cfg.hop_s);
  const FeatureTensor logmels = LogMel(spec, cfg.mel_bands);
  const FeatureTensor ivs = IntensityVectors(spec, cfg.mel_bands);
  WriteTensor(OutPath(cfg, artifact::kFeatures),
              ToTensor(AssembleFeatures(logmels, ivs)));

  DoaOracleOptions oracle_opts;
  oracle_opts.activity_threshold_db = cfg.activity_threshold_db;
  oracle_opts.frames_per_label =
      IntegerRatio(cfg.label_hop_s, cfg.hop_s, "label hop over STFT hop");
  oracle_opts.label_frames = LabelFramesForSamples(
      foa.num_samples(), foa.sample_rate, cfg.label_hop_s);
  const ClipLabels oracle = EstimateDoaIv(ivs, logmels, oracle_opts);

  const std::string ref_path =
      InputOr(cfg.reference_csv, cfg, artifact::kReferenceCsv);
  const std::vector<EventInstance> reference =
      ReadEventsIfPresent(ref_path, cfg.classes);
  if (reference.empty()) {
    log.Write("features", "warning",
              "no reference events; predictions carry no classes");
  }
  const std::vector<EventInstance> predicted =
      OraclePredictions(oracle, reference);
  WriteMetadataCsv(OutPath(cfg, artifact::kPredictionCsv), predicted);
  log.Write("features", "info",
            std::to_string(spec.frames()) + " STFT frames, " +
                std::to_string(predicted.size()) + " predicted events");
}

void RunBeamform(const PipelineConfig& cfg) {
  ValidatePipelineConfig(cfg);
  EnsureOutputDir(cfg);
  const RunLog log(cfg.output_dir);
  const std::string mic_path = InputOr(cfg.mic_wav, cfg, artifact::kMicWav);
  const std::string pred_path =
      InputOr(cfg.prediction_csv, cfg, artifact::kPredictionCsv);
  RequireFile(mic_path, "microphone recording");
  RequireFile(pred_path, "trajectory CSV");
  const AudioClip mic = ReadWav(mic_path);
  const std::vector<EventInstance> events =
      ReadMetadataCsv(pred_path, cfg.classes);
  const std::size_t frames = LabelFramesForSamples(
      mic.num_samples(), mic.sample_rate, cfg.label_hop_s);
  const ClipLabels traj =
      ReorderScene(events, cfg.tracks, frames, cfg.classes, ClipFrames(cfg));

  std::optional<SceneConfig> scene;
  if (!cfg.scene_path.empty()) scene = LoadScene(cfg);
  const MicArrayGeometry geom = MicArrayGeometry::Tetrahedral(
      scene ? scene->array_radius_m : cfg.array_radius_m);
  if (mic.num_channels() != geom.size()) {
    throw Error(ErrorCode::kShape, "beamform",
                mic_path + " has " + std::to_string(mic.num_channels()) +
                    " channels, the array has " + std::to_string(geom.size()));
  }
  const BeamformOptions bopts = BeamOpts(cfg);
  const SpectralTensor spec = Stft(mic, cfg.window_s, cfg.hop_s);
  const SpectralTensor beams = DsBeamform(spec, traj, geom, bopts);
  WriteWav(OutPath(cfg, artifact::kBeamformedWav), Istft(beams));
  log.Write("beamform", "info",
            std::to_string(cfg.tracks) + " beams from " +
                std::to_string(events.size()) + " trajectory events");

  if (!scene) return;
  SceneConfig clean_scene = *scene;
  clean_scene.noise_snr_db.reset();
  const RenderOptions ropts = RenderOpts(cfg);
  const AudioClip clean = RenderMicArray(clean_scene, geom, ropts);
  AudioClip noise(clean.sample_rate, clean.num_channels(), clean.num_samples());
  if (scene->noise_snr_db) {
    const AudioClip noisy = RenderMicArray(*scene, geom, ropts);
    for (std::size_t m = 0; m < noise.num_channels(); ++m) {
      for (std::size_t i = 0; i < noise.num_samples(); ++i) {
        noise.channels[m][i] = noisy.channels[m][i] - clean.channels[m][i];
      }
    }
  } else {
    // Clean scenes are probed with channel-independent white noise at the
    // mean capsule power (0 dB input SNR).
    double ref = 0.0;
    for (const auto& ch : clean.channels) ref += MeanPower(ch);
    ref /= static_cast<double>(clean.num_channels());
    const double sigma = ref > 0.0 ? std::sqrt(ref) : 1.0;
    std::mt19937_64 rng(scene->seed ^ kProbeNoiseSalt);
    std::normal_distribution<double> normal(0.0, sigma);
    for (auto& ch : noise.channels) {
      for (double& v : ch) v = normal(rng);
    }
    log.Write("beamform", "info", "clean scene: SNR gain measured with a probe noise");
  }
  const BeamformReport report = ComputeBeamformReport(
      clean, noise, traj, geom, bopts, cfg.window_s, cfg.hop_s);
  WriteText(OutPath(cfg, artifact::kBeamformReport), report.ToKeyValue());
}

void RunReorder(const PipelineConfig& cfg) {
  ValidatePipelineConfig(cfg);
  EnsureOutputDir(cfg);
  const RunLog log(cfg.output_dir);
  const std::string csv =
      InputOr(cfg.reference_csv, cfg, artifact::kReferenceCsv);
  RequireFile(csv, "metadata CSV");
  const std::vector<EventInstance> events = ReadMetadataCsv(csv, cfg.classes);
  const std::size_t frames = static_cast<std::size_t>(MaxOffset(events));
  const ClipLabels traj =
      ReorderScene(events, cfg.tracks, frames, cfg.classes, ClipFrames(cfg));
  Tensor t;
  t.shape = {static_cast<std::uint32_t>(traj.num_tracks()),
             static_cast<std::uint32_t>(traj.num_frames()),
             static_cast<std::uint32_t>(3 + traj.num_classes())};
  t.values.reserve(t.element_count());
  for (std::size_t k = 0; k < traj.num_tracks(); ++k) {
    for (std::size_t f = 0; f < traj.num_frames(); ++f) {
      const DirectionVector& d = traj.direction(k, f);
      t.values.push_back(static_cast<float>(d.x));
      t.values.push_back(static_cast<float>(d.y));
      t.values.push_back(static_cast<float>(d.z));
      for (std::size_t c = 0; c < traj.num_classes(); ++c) {
        t.values.push_back(static_cast<float>(traj.class_prob(k, f, c)));
      }
    }
  }
  WriteTensor(OutPath(cfg, artifact::kTrackwise), t);
  log.Write("reorder", "info",
            std::to_string(events.size()) + " events over " +
                std::to_string(frames) + " frames");
}

MetricsReport RunEvaluate(const PipelineConfig& cfg) {
  ValidatePipelineConfig(cfg);
  EnsureOutputDir(cfg);
  const RunLog log(cfg.output_dir);
  const std::string pred_path =
      InputOr(cfg.prediction_csv, cfg, artifact::kPredictionCsv);
  const std::string ref_path =
      InputOr(cfg.reference_csv, cfg, artifact::kReferenceCsv);
  RequireFile(pred_path, "prediction CSV");
  RequireFile(ref_path, "reference CSV");
  const std::vector<EventInstance> pred =
      ReadMetadataCsv(pred_path, cfg.classes);
  const std::vector<EventInstance> ref = ReadMetadataCsv(ref_path, cfg.classes);
  if (ref.empty()) {
    throw Error(ErrorCode::kUndefinedMetric, "metrics", "no references");
  }
  const std::size_t frames =
      static_cast<std::size_t>(std::max(MaxOffset(pred), MaxOffset(ref)));
  const FrameDoas pd = FrameDoasFromEvents(pred, frames);
  const FrameDoas rd = FrameDoasFromEvents(ref, frames);
  MetricsConfig mcfg;
  mcfg.classes = cfg.classes;
  mcfg.threshold_deg = cfg.doa_threshold_deg;
  MetricsReport report = ComputeSeldMetrics(pd, rd, mcfg);
  const DoaMetrics doa = ComputeDoaMetrics(pd, rd, cfg.doa_threshold_deg);
  report.acc = doa.acc;
  report.mdr = doa.mdr;
  report.mae = doa.mae;
  auto activity = [&](std::span<const EventInstance> events) {
    ClassActivity a(frames, cfg.classes);
    for (const EventInstance& e : events) {
      for (int f = e.onset_frame; f < e.offset_frame; ++f) {
        a.at(static_cast<std::size_t>(f),
             static_cast<std::size_t>(e.class_id)) = 1.0;
      }
    }
    return a;
  };
  report.f_macro = SegmentFMacro(activity(pred), activity(ref));
  WriteText(OutPath(cfg, artifact::kMetricsTxt), report.ToKeyValue());
  WriteText(OutPath(cfg, artifact::kMetricsCsv),
            MetricsReport::CsvHeader() + report.ToCsvRow());
  log.Write("evaluate", "info",
            std::to_string(pred.size()) + " predicted and " +
                std::to_string(ref.size()) + " reference events over " +
                std::to_string(frames) + " frames");
  return report;
}

MetricsReport RunPipeline(const PipelineConfig& cfg) {
  ValidatePipelineConfig(cfg);
  EnsureOutputDir(cfg);
  const RunLog log(cfg.output_dir);
  log.Truncate();
  if (!cfg.scene_path.empty()) RunSimulate(cfg);
  RunFeatures(cfg);
  RunBeamform(cfg);
  return RunEvaluate(cfg);
}

}  // namespace seld
