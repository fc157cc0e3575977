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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "oracles.h"
#include "seld/assign.h"
#include "seld/beamform.h"
#include "seld/doa_oracle.h"
#include "seld/dsp.h"
#include "seld/fusion.h"
#include "seld/metrics.h"
#include "seld/pipeline.h"
#include "seld/scene_sim.h"
#include "seld/trackwise.h"
#include "test_util.h"

namespace seld {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void Require(Outcome& o, bool ok, const std::string& what) {
  if (!ok && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

SceneConfig StaticScene(AzEl dir, double duration, double onset,
                        double offset, std::uint64_t seed) {
  SceneConfig s;
  s.duration_s = duration;
  s.seed = seed;
  EventSpec e;
  e.onset_s = onset;
  e.offset_s = offset;
  e.trajectory = {{onset, dir}};
  s.events.push_back(e);
  return s;
}

ClipLabels Trajectory(AzEl dir, std::size_t frames) {
  ClipLabels l(1, frames, kDefaultClasses);
  for (std::size_t t = 0; t < frames; ++t) l.SetEvent(0, t, 0, AzElToUnit(dir));
  return l;
}

Outcome SeldIdentity() {
  const auto start = std::chrono::steady_clock::now();
  struct Row {
    double er, f, le, lr, printed;
  };
  const Row rows[] = {{0.57, 29.9, 22.0, 47.7, 0.4791},
                      {0.58, 39.5, 20.0, 55.8, 0.4345},
                      {0.56, 42.7, 17.9, 62.0, 0.4019},
                      {0.54, 42.5, 18.7, 62.6, 0.3980},
                      {0.55, 42.8, 18.3, 62.1, 0.4007},
                      {0.54, 42.9, 17.9, 62.4, 0.3966},
                      {0.54, 44.0, 18.4, 64.5, 0.3891}};
  Outcome o;
  double worst = 0.0;
  for (const Row& r : rows) {
    const double s = SeldScore(r.er, r.f, r.le, r.lr);
    worst = std::max(worst, std::abs(s - r.printed));
    Require(o, std::abs(s - r.printed) <= 0.002,
            "row " + Fmt(r.printed) + " computes " + Fmt(s));
  }
  const double base = SeldScore(0.57, 29.9, 22.0, 47.7);
  Require(o, std::round(base * 1e4) / 1e4 == 0.4791,
          "baseline computes " + Fmt(base));
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();
  Require(o, secs < 1.0, "runtime " + Fmt(secs) + " s");
  if (o.pass) o.detail = "max deviation " + Fmt(worst);
  return o;
}

Outcome StftRoundTrip() {
  Outcome o;
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> len(2400, 48000);
  std::normal_distribution<double> n(0.0, 1.0);
  const std::size_t win = 960;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    AudioClip clip(24000, 1, static_cast<std::size_t>(len(rng)));
    for (double& v : clip.channels[0]) v = n(rng);
    const AudioClip back = Istft(Stft(clip, 0.04, 0.02));
    double err = 0.0, ref = 0.0;
    const std::size_t end = std::min(back.num_samples(), clip.num_samples());
    for (std::size_t i = win; i + win <= end; ++i) {
      const double d = back.channels[0][i] - clip.channels[0][i];
      err += d * d;
      ref += clip.channels[0][i] * clip.channels[0][i];
    }
    const double rel = std::sqrt(err / ref);
    worst = std::max(worst, rel);
    Require(o, rel < 1e-6, "trial " + std::to_string(trial) + " error " +
                               Fmt(rel));
  }
  if (o.pass) o.detail = "worst relative RMS " + Fmt(worst);
  return o;
}

Outcome BeamformGain() {
  Outcome o;
  const MicArrayGeometry geom = MicArrayGeometry::Tetrahedral();
  SceneConfig scene = StaticScene({25, 15}, 2.0, 0.0, 2.0, 5);
  const AudioClip clean = RenderMicArray(scene, geom);
  scene.noise_snr_db = 0.0;
  const AudioClip noisy = RenderMicArray(scene, geom);
  AudioClip noise = noisy;
  for (std::size_t m = 0; m < noise.num_channels(); ++m) {
    for (std::size_t i = 0; i < noise.num_samples(); ++i) {
      noise.channels[m][i] -= clean.channels[m][i];
    }
  }
  const BeamformReport r = ComputeBeamformReport(
      clean, noise, Trajectory({25, 15}, 20), geom, {}, 0.04, 0.02);
  Require(o, r.tracks.size() == 1, "expected one active track");
  if (!o.pass) return o;
  Require(o, r.tracks[0].gain_db >= 4.0,
          "SNR gain " + Fmt(r.tracks[0].gain_db) + " dB");
  Require(o, r.noise_suppression_db.has_value() &&
                 std::abs(*r.noise_suppression_db - 10 * std::log10(4.0)) <= 1.0,
          "noise suppression " +
              Fmt(r.noise_suppression_db.value_or(std::nan(""))) + " dB");
  if (o.pass) {
    o.detail = "input SNR " + Fmt(r.tracks[0].input_snr_db) + " dB, gain " +
               Fmt(r.tracks[0].gain_db) + " dB, suppression " +
               Fmt(*r.noise_suppression_db) + " dB";
  }
  return o;
}

Outcome SteeringPhase() {
  Outcome o;
  const MicArrayGeometry geom = MicArrayGeometry::Tetrahedral();
  BeamformOptions opts;
  opts.source_distance_m = 1e4;  // far field, matching the plane-wave render
  double worst = 0.0;
  for (AzEl dir : {AzEl{0, 0}, AzEl{60, 30}, AzEl{-135, -40}, AzEl{170, 80}}) {
    const SpectralTensor x =
        RenderMicArraySpectral(StaticScene(dir, 1.0, 0.0, 1.0, 6), geom);
    const SteeringField field =
        ComputeSteeringField(x, Trajectory(dir, 10), geom, opts);
    const SpectralTensor s = SteerChannels(x, field, 0);
    double peak = 0.0;
    for (const auto& c : x.data()) peak = std::max(peak, std::norm(c));
    for (std::size_t t = 0; t < s.frames(); ++t) {
      for (std::size_t f = 0; f < s.bins(); ++f) {
        if (std::norm(x.at(0, t, f)) < 1e-6 * peak) continue;
        for (std::size_t m = 1; m < s.channels(); ++m) {
          const double r =
              std::abs(std::arg(s.at(m, t, f) * std::conj(s.at(0, t, f))));
          worst = std::max(worst, r);
        }
      }
    }
  }
  Require(o, worst < 1e-3, "max residual " + Fmt(worst) + " rad");
  if (o.pass) o.detail = "max residual " + Fmt(worst) + " rad";
  return o;
}

DoaMetrics OracleDoa(const SceneConfig& scene) {
  const SpectralTensor spec = Stft(EncodeFoa(scene));
  const ClipLabels oracle =
      EstimateDoaIv(IntensityVectors(spec), LogMel(spec));
  const std::vector<EventInstance> ref = GroundTruthEvents(scene);
  const std::size_t frames = LabelFrameCount(scene);
  return ComputeDoaMetrics(
      FrameDoasFromEvents(OraclePredictions(oracle, ref), frames),
      FrameDoasFromEvents(ref, frames));
}

Outcome OracleDoaLoop() {
  Outcome o;
  std::string detail;
  for (AzEl dir : {AzEl{40, 10}, AzEl{-150, -35}, AzEl{95, 70}}) {
    const DoaMetrics m = OracleDoa(StaticScene(dir, 5.0, 0.5, 4.5, 21));
    Require(o, m.mae && *m.mae < 0.06, "clean MAE " + Fmt(m.mae.value_or(-1)));
    Require(o, m.acc == 100.0, "clean ACC " + Fmt(m.acc));
    Require(o, m.mdr == 0.0, "clean MDR " + Fmt(m.mdr));
    if (detail.empty()) detail = "clean MAE " + Fmt(*m.mae);
  }
  SceneConfig noisy = StaticScene({-70, 20}, 5.0, 0.5, 4.5, 21);
  noisy.noise_snr_db = 10.0;
  const DoaMetrics m = OracleDoa(noisy);
  Require(o, m.mae && *m.mae < 5.0, "10 dB MAE " + Fmt(m.mae.value_or(-1)));
  if (o.pass) o.detail = detail + ", 10 dB MAE " + Fmt(*m.mae);
  return o;
}

EventInstance MakeEvent(int cls, int on, int off, int source,
                        std::mt19937_64& rng) {
  EventInstance e;
  e.class_id = cls;
  e.source_id = source;
  e.onset_frame = on;
  e.offset_frame = off;
  for (int f = on; f < off; ++f) e.directions.push_back(testing::RandomUnit(rng));
  return e;
}

Outcome Reordering() {
  Outcome o;
  std::mt19937_64 rng(6);
  const std::size_t tracks = kDefaultTracks;
  const int frames = static_cast<int>(kClipLabelFrames);
  std::uniform_int_distribution<int> count(0, static_cast<int>(tracks));
  std::uniform_int_distribution<int> cls(0, kDefaultClasses - 1);
  std::uniform_int_distribution<int> frame(0, frames - 1);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  for (int trial = 0; trial < 10000 && o.pass; ++trial) {
    std::vector<EventInstance> events;
    std::map<int, int> next_source;
    for (int i = count(rng); i > 0; --i) {
      const int a = frame(rng), b = frame(rng);
      const int c = cls(rng);
      events.push_back(MakeEvent(c, std::min(a, b), std::max(a, b) + 1,
                                 next_source[c]++, rng));
    }
    const ClipLabels l = ReorderEvents(events, tracks, kClipLabelFrames);
    for (std::size_t k = 0; k < tracks; ++k) {
      std::set<int> seen;
      for (std::size_t t = 0; t < l.num_frames(); ++t) {
        if (l.active(k, t)) seen.insert(l.class_id(k, t));
      }
      Require(o, seen.size() <= 1,
              "trial " + std::to_string(trial) + ": track hosts two classes");
    }
    std::multiset<std::tuple<int, int, int>> in, out;
    for (const auto& e : events) in.insert({e.class_id, e.onset_frame, e.offset_frame});
    for (const auto& e : ExtractEvents(l)) out.insert({e.class_id, e.onset_frame, e.offset_frame});
    Require(o, in == out,
            "trial " + std::to_string(trial) + ": event multiset changed");

    ClipLabels soft(tracks, 4, 3);
    for (std::size_t k = 0; k < tracks; ++k) {
      for (std::size_t t = 0; t < 4; ++t) {
        for (std::size_t c = 0; c < 3; ++c) soft.set_class_prob(k, t, c, prob(rng));
      }
    }
    const ClassActivity a = CollapseTracks(soft);
    for (std::size_t t = 0; t < 4; ++t) {
      for (std::size_t c = 0; c < 3; ++c) {
        double best = 0.0;
        for (std::size_t k = 0; k < tracks; ++k) {
          best = std::max(best, soft.class_prob(k, t, c));
        }
        Require(o, a.at(t, c) == best, "collapse differs from brute force");
      }
    }
  }

  // Female speech throughout; male speech ends; music starts afterwards and
  // must not inherit the freed track.
  std::mt19937_64 r2(1);
  const std::vector<EventInstance> story = {MakeEvent(0, 0, 45, 0, r2),
                                            MakeEvent(1, 5, 20, 0, r2),
                                            MakeEvent(2, 25, 40, 0, r2)};
  const ClipLabels l = ReorderEvents(story, tracks, kClipLabelFrames);
  Require(o, l.class_id(1, 10) == 1 && !l.active(1, 30) &&
                 l.class_id(2, 30) == 2,
          "music was moved onto the male-speech track");
  if (o.pass) o.detail = "10000 random sets";
  return o;
}

Outcome HungarianAndPit() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::uniform_int_distribution<int> small(0, 3);
  for (std::size_t r = 1; r <= 4; ++r) {
    for (std::size_t c = 1; c <= 4; ++c) {
      for (int trial = 0; trial < 1000; ++trial) {
        CostMatrix m(r, c);
        // Every fourth matrix uses small integers to exercise ties.
        for (double& v : m.values) v = trial % 4 == 0 ? small(rng) : u(rng);
        const Assignment a = Hungarian(m);
        const auto [best, map] = testing::ExhaustiveAssignment(m);
        Require(o, std::abs(a.cost - best) <= 1e-9 * (1.0 + std::abs(best)),
                std::to_string(r) + "x" + std::to_string(c) + " cost " +
                    Fmt(a.cost) + " vs " + Fmt(best));
      }
    }
  }
  const std::size_t tracks = 3, frames = 8, classes = 4;
  std::uniform_real_distribution<double> p(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ClipLabels pred(tracks, frames, classes), ref(tracks, frames, classes);
    for (std::size_t k = 0; k < tracks; ++k) {
      for (std::size_t t = 0; t < frames; ++t) {
        pred.set_direction(k, t, testing::RandomUnit(rng));
        for (std::size_t c = 0; c < classes; ++c) pred.set_class_prob(k, t, c, p(rng));
        if (p(rng) < 0.6) {
          ref.SetEvent(k, t, static_cast<int>(small(rng)), testing::RandomUnit(rng));
        }
      }
    }
    const PitResult doa = PitDoaLoss(pred, ref);
    const PitResult sed = PitSedLoss(pred, ref);
    std::vector<int> order = {0, 1, 2};
    std::shuffle(order.begin(), order.end(), rng);
    const ClipLabels shuffled = pred.PermuteTracks(order);
    Require(o, PitDoaLoss(shuffled, ref).loss == doa.loss,
            "DoA PIT loss changed under permutation");
    Require(o, PitSedLoss(shuffled, ref).loss == sed.loss,
            "SED PIT loss changed under permutation");
  }
  if (o.pass) o.detail = "16 shapes x 1000 matrices";
  return o;
}

FrameDoas Single(int cls, AzEl dir) {
  return FrameDoas(1, {LabeledDoa{cls, AzElToUnit(dir)}});
}

Outcome MetricOracle() {
  Outcome o;
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    FrameDoas pred, ref;
    const std::size_t classes = 1 + trial % 3;
    testing::RandomScenario(rng, 1 + trial % 20, classes, pred, ref);
    MetricsConfig cfg;
    cfg.classes = classes;
    const MetricsReport r = ComputeSeldMetrics(pred, ref, cfg);
    const auto x = testing::CountingOracle(pred, ref, classes, 20.0, 10);
    Require(o, r.er20 == x.er && r.f20 == x.f && r.le_cd == x.le &&
                   r.lr_cd == x.lr,
            "scenario " + std::to_string(trial) + " differs from oracle");
  }
  const MetricsReport ten = ComputeSeldMetrics(Single(0, {10, 0}), Single(0, {0, 0}));
  Require(o, ten.seld_score && std::abs(*ten.seld_score - 0.0139) < 5e-5,
          "10 degree fixture SELD " + Fmt(ten.seld_score.value_or(-1)));
  const MetricsReport del = ComputeSeldMetrics(FrameDoas(1), Single(0, {0, 0}));
  Require(o, del.er20 && *del.er20 == 1.0, "deletion-only ER is not 1");
  if (o.pass) o.detail = "500 scenarios, 10 degree SELD " + Fmt(*ten.seld_score);
  return o;
}

Outcome FusionInvariants() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  auto random = [&](Eigen::Index r, Eigen::Index c) {
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = n(rng);
    }
    return m;
  };
  double worst = 0.0;
  for (std::size_t c = 1; c <= 8; ++c) {
    for (std::size_t d = 1; d <= 8; ++d) {
      FusionConfig cfg;
      cfg.cnn_channels = c;
      cfg.guide_dim = d;
      const FusionWeights w = RandomFusionWeights(cfg, c * 16 + d);
      const Eigen::Index l = 1 + static_cast<Eigen::Index>((c + d) % 4);
      const Matrix x = random(6, c);
      const Matrix g = random(l, d);
      const Matrix a = SaamAttention(x, g, w);
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        Require(o, std::abs(a.row(i).sum() - 1.0) <= 1e-6,
                "attention row sum " + Fmt(a.row(i).sum()));
      }
      // Scalar loops over the full forward pass.
      const Matrix q = x * w.query, k = g * w.key, v = g * w.value;
      for (Eigen::Index i = 0; i < x.rows(); ++i) {
        std::vector<double> s(static_cast<std::size_t>(l));
        double mx = -1e300, z = 0.0;
        for (Eigen::Index j = 0; j < l; ++j) {
          double dot = 0.0;
          for (Eigen::Index m = 0; m < q.cols(); ++m) dot += q(i, m) * k(j, m);
          s[j] = dot / std::sqrt(double(c));
          mx = std::max(mx, s[j]);
        }
        for (double& sj : s) z += std::exp(sj - mx);
        std::vector<double> att(c, 0.0), out(c, 0.0);
        for (Eigen::Index j = 0; j < l; ++j) {
          for (std::size_t m = 0; m < c; ++m) {
            att[m] += std::exp(s[j] - mx) / z * v(j, Eigen::Index(m));
          }
        }
        for (std::size_t m = 0; m < c; ++m) {
          for (std::size_t p = 0; p < c; ++p) out[m] += att[p] * w.output(p, m);
        }
        const Matrix y = FusionStage(x.row(i), g, w);
        for (std::size_t m = 0; m < c; ++m) {
          double gate = 0.0;
          for (std::size_t p = 0; p < c; ++p) gate += out[p] * w.gate(p, m);
          const double expect = x(i, m) + std::tanh(gate) * out[m];
          worst = std::max(worst, std::abs(y(0, Eigen::Index(m)) - expect));
        }
      }
      FusionWeights zero = w;
      zero.gate.setZero();
      Require(o, FusionStage(x, g, zero) == x, "zero gate is not identity");
    }
  }
  Require(o, worst <= 1e-9, "forward deviation " + Fmt(worst));
  if (o.pass) o.detail = "max forward deviation " + Fmt(worst);
  return o;
}

Outcome Determinism() {
  Outcome o;
  const std::string scene =
      (fs::path(testing::EnvOr("SELD_EXAMPLES", SELD_TEST_EXAMPLES)) /
       "moving_sources.json").string();
  const fs::path a = testing::TempDir("accept_run_a");
  const fs::path b = testing::TempDir("accept_run_b");
  for (const fs::path& dir : {a, b}) {
    PipelineConfig cfg;
    cfg.scene_path = scene;
    cfg.output_dir = dir.string();
    cfg.seed = 1234;
    RunPipeline(cfg);
  }
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const fs::path other = b / entry.path().filename();
    ++files;
    Require(o, fs::exists(other) &&
                   testing::ReadFile(entry.path().string()) ==
                       testing::ReadFile(other.string()),
            entry.path().filename().string() + " differs between runs");
  }
  Require(o, files >= 9, "only " + std::to_string(files) + " artifacts");
  fs::remove_all(a);
  fs::remove_all(b);
  if (o.pass) o.detail = std::to_string(files) + " artifacts identical";
  return o;
}

}  // namespace
}  // namespace seld

int main() {
  using seld::Outcome;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"seld-score aggregation identity", seld::SeldIdentity},
      {"stft round trip", seld::StftRoundTrip},
      {"beamforming coherent gain", seld::BeamformGain},
      {"steering phase alignment", seld::SteeringPhase},
      {"oracle doa closed loop", seld::OracleDoaLoop},
      {"trackwise reordering properties", seld::Reordering},
      {"hungarian and pit invariance", seld::HungarianAndPit},
      {"metric oracle equivalence", seld::MetricOracle},
      {"fusion invariants", seld::FusionInvariants},
      {"pipeline determinism", seld::Determinism},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %s (%s; %.2f s)\n", o.pass ? "PASS" : "FAIL", index,
                name, o.detail.c_str(), secs);
    if (!o.pass) ++failures;
    ++index;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
