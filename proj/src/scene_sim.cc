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

#include "seld/scene_sim.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "seld/dsp.h"
#include "seld/error.h"

namespace seld {

namespace {

constexpr std::uint64_t kNoiseStream = 0x6e6f697365ULL;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 StreamRng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(SplitMix64(seed ^ SplitMix64(stream)));
}

std::size_t SceneSamples(const SceneConfig& scene) {
  return static_cast<std::size_t>(
      std::llround(scene.duration_s * scene.sample_rate));
}

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

Span EventSpan(const SceneConfig& scene, const EventSpec& e) {
  const std::size_t total = SceneSamples(scene);
  const auto on = static_cast<std::size_t>(
      std::max<long long>(0, std::llround(e.onset_s * scene.sample_rate)));
  const auto off = static_cast<std::size_t>(
      std::max<long long>(0, std::llround(e.offset_s * scene.sample_rate)));
  return {std::min(on, total), std::min(off, total)};
}

void NoteClipping(const SceneConfig& scene,
                  std::vector<std::string>* warnings) {
  if (!warnings) return;
  for (std::size_t i = 0; i < scene.events.size(); ++i) {
    if (scene.events[i].offset_s > scene.duration_s + 1e-9) {
      warnings->push_back("event " + std::to_string(i) + " ends at " +
                          std::to_string(scene.events[i].offset_s) +
                          " s, clipped to the scene duration of " +
                          std::to_string(scene.duration_s) + " s");
    }
  }
}

double MeanPower(const std::vector<double>& x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc / static_cast<double>(x.size());
}

// Adds white Gaussian noise, independent per channel, at `snr_db` below
// `reference_power`. Silent references get no noise.
void AddNoise(AudioClip& clip, double reference_power, double snr_db,
              std::uint64_t seed, std::uint64_t stream) {
  if (reference_power <= 0.0) return;
  const double sigma = std::sqrt(reference_power / std::pow(10.0, snr_db / 10.0));
  for (std::size_t ch = 0; ch < clip.num_channels(); ++ch) {
    std::mt19937_64 rng = StreamRng(seed, stream + ch);
    std::normal_distribution<double> normal(0.0, sigma);
    for (double& v : clip.channels[ch]) v += normal(rng);
  }
}

// Mono timeline of one event over the whole scene.
std::vector<double> EventTimeline(const SceneConfig& scene, std::size_t i) {
  std::vector<double> line(SceneSamples(scene), 0.0);
  const Span span = EventSpan(scene, scene.events[i]);
  const std::vector<double> sig = EventSignal(scene, i);
  std::copy(sig.begin(), sig.end(),
            line.begin() + static_cast<std::ptrdiff_t>(span.begin));
  return line;
}

// Multiplies each frame of `spec` channel 0 by the plane-wave delay phase of
// capsule `pos` and accumulates into `out` channel `ch`.
void AccumulateDelayed(const SpectralTensor& spec, const EventSpec& e,
                       const DirectionVector& pos, double frame_time_offset_s,
                       double c, SpectralTensor& out, std::size_t ch) {
  const double hop_s = spec.hop_s();
  const double half_window_s = spec.window_s() / 2.0;
  for (std::size_t t = 0; t < spec.frames(); ++t) {
    const double center = static_cast<double>(t) * hop_s + half_window_s +
                          frame_time_offset_s;
    const double tau = -Dot(pos, e.DirectionAt(center)) / c;
    for (std::size_t k = 0; k < spec.bins(); ++k) {
      const double phase = -2.0 * kPi * spec.bin_hz(k) * tau;
      out.at(ch, t, k) += spec.at(0, t, k) * std::polar(1.0, phase);
    }
  }
}

}  // namespace

DirectionVector EventSpec::DirectionAt(double time_s) const {
  if (trajectory.empty()) {
    throw Error(ErrorCode::kValidation, "scene_sim", "empty trajectory");
  }
  if (trajectory.size() == 1 || time_s <= trajectory.front().time_s) {
    return AzElToUnit(trajectory.front().direction);
  }
  if (time_s >= trajectory.back().time_s) {
    return AzElToUnit(trajectory.back().direction);
  }
  const auto upper = std::upper_bound(
      trajectory.begin(), trajectory.end(), time_s,
      [](double t, const Waypoint& w) { return t < w.time_s; });
  const Waypoint& b = *upper;
  const Waypoint& a = *(upper - 1);
  const double span = b.time_s - a.time_s;
  const double frac = span > 0.0 ? (time_s - a.time_s) / span : 1.0;
  return Slerp(AzElToUnit(a.direction), AzElToUnit(b.direction), frac);
}

MicArrayGeometry MicArrayGeometry::Tetrahedral(double radius) {
  const double s = radius / std::sqrt(3.0);
  return {{{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}}};
}

void ValidateScene(const SceneConfig& scene) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kValidation, "scene_sim", what);
  };
  if (!(scene.duration_s > 0.0)) fail("duration must be positive");
  if (scene.sample_rate <= 0) fail("sample rate must be positive");
  if (!(scene.array_radius_m > 0.0)) fail("array radius must be positive");
  for (std::size_t i = 0; i < scene.events.size(); ++i) {
    const EventSpec& e = scene.events[i];
    const std::string tag = "event " + std::to_string(i) + ": ";
    if (e.class_id < 0) fail(tag + "negative class id");
    if (!(e.onset_s >= 0.0) || !(e.onset_s < e.offset_s)) {
      fail(tag + "needs 0 <= onset < offset");
    }
    if (e.trajectory.empty()) fail(tag + "trajectory is empty");
    for (std::size_t w = 0; w < e.trajectory.size(); ++w) {
      try {
        AzElToUnit(e.trajectory[w].direction);
      } catch (const Error& err) {
        fail(tag + "waypoint " + std::to_string(w) + ": " + err.what());
      }
      if (w > 0 && e.trajectory[w].time_s < e.trajectory[w - 1].time_s) {
        fail(tag + "waypoint times must be non-decreasing");
      }
    }
    if (e.trajectory.size() > 1 &&
        (e.trajectory.front().time_s > e.onset_s + 1e-9 ||
         e.trajectory.back().time_s < e.offset_s - 1e-9)) {
      fail(tag + "trajectory does not cover [onset, offset]");
    }
    if (e.signal.kind == SignalSpec::Kind::kTone && !(e.signal.frequency_hz > 0)) {
      fail(tag + "tone frequency must be positive");
    }
  }
}

std::vector<double> EventSignal(const SceneConfig& scene,
                                std::size_t event_index) {
  const EventSpec& e = scene.events.at(event_index);
  const Span span = EventSpan(scene, e);
  std::vector<double> sig(span.end - span.begin, 0.0);
  switch (e.signal.kind) {
    case SignalSpec::Kind::kNoise: {
      std::mt19937_64 rng = StreamRng(scene.seed, event_index);
      std::normal_distribution<double> normal(0.0, e.signal.amplitude);
      for (double& v : sig) v = normal(rng);
      break;
    }
    case SignalSpec::Kind::kTone: {
      const double w = 2.0 * kPi * e.signal.frequency_hz / scene.sample_rate;
      for (std::size_t n = 0; n < sig.size(); ++n) {
        sig[n] = e.signal.amplitude * std::sin(w * static_cast<double>(n));
      }
      break;
    }
    case SignalSpec::Kind::kSamples: {
      const std::size_t n = std::min(sig.size(), e.signal.samples.size());
      for (std::size_t i = 0; i < n; ++i) {
        sig[i] = e.signal.amplitude * e.signal.samples[i];
      }
      break;
    }
  }
  return sig;
}

AudioClip EncodeFoa(const SceneConfig& scene,
                    std::vector<std::string>* warnings) {
  ValidateScene(scene);
  NoteClipping(scene, warnings);
  AudioClip clip(scene.sample_rate, 4, SceneSamples(scene));
  for (std::size_t i = 0; i < scene.events.size(); ++i) {
    const EventSpec& e = scene.events[i];
    const Span span = EventSpan(scene, e);
    const std::vector<double> sig = EventSignal(scene, i);
    for (std::size_t n = 0; n < sig.size(); ++n) {
      const std::size_t at = span.begin + n;
      const DirectionVector d =
          e.DirectionAt(static_cast<double>(at) / scene.sample_rate);
      clip.channels[0][at] += sig[n];
      clip.channels[1][at] += sig[n] * d.x;
      clip.channels[2][at] += sig[n] * d.y;
      clip.channels[3][at] += sig[n] * d.z;
    }
  }
  if (scene.noise_snr_db) {
    AddNoise(clip, MeanPower(clip.channels[0]), *scene.noise_snr_db,
             scene.seed, kNoiseStream);
  }
  return clip;
}

SpectralTensor RenderMicArraySpectral(const SceneConfig& scene,
                                      const MicArrayGeometry& geom,
                                      const RenderOptions& opts) {
  ValidateScene(scene);
  if (geom.size() == 0) {
    throw Error(ErrorCode::kValidation, "scene_sim", "empty microphone array");
  }
  const std::size_t n = SceneSamples(scene);
  const std::size_t win = SecondsToSamples(opts.window_s, scene.sample_rate);
  const std::size_t hop = SecondsToSamples(opts.hop_s, scene.sample_rate);
  if (n < win) {
    throw Error(ErrorCode::kInsufficientInput, "scene_sim",
                "scene shorter than one analysis window");
  }
  SpectralTensor out(geom.size(), (n - win) / hop + 1, win, hop,
                     scene.sample_rate);
  for (std::size_t i = 0; i < scene.events.size(); ++i) {
    AudioClip mono;
    mono.sample_rate = scene.sample_rate;
    mono.channels.push_back(EventTimeline(scene, i));
    const SpectralTensor s = Stft(mono, opts.window_s, opts.hop_s);
    for (std::size_t m = 0; m < geom.size(); ++m) {
      AccumulateDelayed(s, scene.events[i], geom.positions[m], 0.0,
                        opts.speed_of_sound, out, m);
    }
  }
  return out;
}

AudioClip RenderMicArray(const SceneConfig& scene, const MicArrayGeometry& geom,
                         const RenderOptions& opts,
                         std::vector<std::string>* warnings) {
  ValidateScene(scene);
  if (geom.size() == 0) {
    throw Error(ErrorCode::kValidation, "scene_sim", "empty microphone array");
  }
  NoteClipping(scene, warnings);
  const std::size_t n = SceneSamples(scene);
  const std::size_t win = SecondsToSamples(opts.window_s, scene.sample_rate);
  const std::size_t hop = SecondsToSamples(opts.hop_s, scene.sample_rate);
  if (hop * 2 != win) {
    throw Error(ErrorCode::kConfiguration, "scene_sim",
                "rendering needs hop == window / 2");
  }
  // Pad by a full window on both sides so every output sample lies in the
  // region where overlap-add is exact.
  const std::size_t frames = (n + win + hop - 1) / hop + 1;
  const std::size_t padded = (frames - 1) * hop + win;
  const double offset_s = -static_cast<double>(win) / scene.sample_rate;

  SpectralTensor acc(geom.size(), frames, win, hop, scene.sample_rate);
  for (std::size_t i = 0; i < scene.events.size(); ++i) {
    AudioClip mono(scene.sample_rate, 1, padded);
    const std::vector<double> line = EventTimeline(scene, i);
    std::copy(line.begin(), line.end(),
              mono.channels[0].begin() + static_cast<std::ptrdiff_t>(win));
    const SpectralTensor s = Stft(mono, opts.window_s, opts.hop_s);
    for (std::size_t m = 0; m < geom.size(); ++m) {
      AccumulateDelayed(s, scene.events[i], geom.positions[m], offset_s,
                        opts.speed_of_sound, acc, m);
    }
  }
  const AudioClip full = Istft(acc);
  AudioClip clip(scene.sample_rate, geom.size(), n);
  for (std::size_t m = 0; m < geom.size(); ++m) {
    std::copy_n(full.channels[m].begin() + static_cast<std::ptrdiff_t>(win), n,
                clip.channels[m].begin());
  }
  if (scene.noise_snr_db) {
    double ref = 0.0;
    for (const auto& ch : clip.channels) ref += MeanPower(ch);
    ref /= static_cast<double>(clip.num_channels());
    AddNoise(clip, ref, *scene.noise_snr_db, scene.seed, kNoiseStream + 64);
  }
  return clip;
}

std::size_t LabelFrameCount(const SceneConfig& scene, double label_hop_s) {
  const double exact = scene.duration_s / label_hop_s;
  const double rounded = std::round(exact);
  return static_cast<std::size_t>(std::abs(exact - rounded) < 1e-9
                                      ? rounded
                                      : std::ceil(exact));
}

std::vector<EventInstance> GroundTruthEvents(const SceneConfig& scene,
                                             double label_hop_s) {
  ValidateScene(scene);
  const int frames = static_cast<int>(LabelFrameCount(scene, label_hop_s));
  const double end_s = scene.duration_s;
  // First frame whose center is at or after `time`.
  auto first_frame_at = [&](double time) {
    const int f = static_cast<int>(std::ceil(time / label_hop_s - 0.5 - 1e-9));
    return std::clamp(f, 0, frames);
  };
  std::vector<int> per_class_count;
  std::vector<EventInstance> out;
  for (const EventSpec& e : scene.events) {
    const std::size_t cls = static_cast<std::size_t>(e.class_id);
    if (per_class_count.size() <= cls) per_class_count.resize(cls + 1, 0);
    const int auto_source = per_class_count[cls]++;

    EventInstance inst;
    inst.class_id = e.class_id;
    inst.source_id = e.source_id >= 0 ? e.source_id : auto_source;
    inst.onset_frame = first_frame_at(e.onset_s);
    inst.offset_frame = first_frame_at(std::min(e.offset_s, end_s));
    if (inst.offset_frame <= inst.onset_frame) continue;
    for (int f = inst.onset_frame; f < inst.offset_frame; ++f) {
      inst.directions.push_back(e.DirectionAt((f + 0.5) * label_hop_s));
    }
    out.push_back(std::move(inst));
  }
  return out;
}

ClipLabels GroundTruthLabels(const SceneConfig& scene, double label_hop_s,
                             std::size_t tracks, std::size_t classes,
                             std::size_t clip_frames) {
  const std::vector<EventInstance> events =
      GroundTruthEvents(scene, label_hop_s);
  CheckConcurrency(events, tracks);
  return ReorderScene(events, tracks, LabelFrameCount(scene, label_hop_s),
                      classes, clip_frames);
}

}  // namespace seld
