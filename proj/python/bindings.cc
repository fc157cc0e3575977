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

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seld/assign.h"
#include "seld/beamform.h"
#include "seld/doa_oracle.h"
#include "seld/dsp.h"
#include "seld/error.h"
#include "seld/fusion.h"
#include "seld/geometry.h"
#include "seld/metrics.h"
#include "seld/scene_sim.h"
#include "seld/trackwise.h"

namespace py = pybind11;

namespace seld {
namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray =
    py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

void ExpectDims(const py::array& a, py::ssize_t dims, const char* name) {
  if (a.ndim() != dims) {
    throw Error(ErrorCode::kShape, "python",
                std::string(name) + " must have " + std::to_string(dims) +
                    " dimensions, got " + std::to_string(a.ndim()));
  }
}

AudioClip ToClip(const RealArray& audio, int sample_rate) {
  ExpectDims(audio, 2, "audio");
  auto v = audio.unchecked<2>();
  AudioClip clip(sample_rate, v.shape(0), v.shape(1));
  for (py::ssize_t c = 0; c < v.shape(0); ++c) {
    for (py::ssize_t i = 0; i < v.shape(1); ++i) clip.channels[c][i] = v(c, i);
  }
  return clip;
}

RealArray FromClip(const AudioClip& clip) {
  RealArray out({clip.num_channels(), clip.num_samples()});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t c = 0; c < clip.num_channels(); ++c) {
    std::copy(clip.channels[c].begin(), clip.channels[c].end(), &v(c, 0));
  }
  return out;
}

SpectralTensor ToSpectral(const ComplexArray& spec, int sample_rate,
                          std::size_t hop_samples) {
  ExpectDims(spec, 3, "spectrum");
  if (spec.shape(2) < 2) {
    throw Error(ErrorCode::kShape, "python", "spectrum needs at least 2 bins");
  }
  const std::size_t fft = 2 * (static_cast<std::size_t>(spec.shape(2)) - 1);
  SpectralTensor out(spec.shape(0), spec.shape(1), fft, hop_samples,
                     sample_rate);
  std::copy(spec.data(), spec.data() + spec.size(), out.data().begin());
  return out;
}

ComplexArray FromSpectral(const SpectralTensor& s) {
  ComplexArray out({s.channels(), s.frames(), s.bins()});
  std::copy(s.data().begin(), s.data().end(), out.mutable_data());
  return out;
}

RealArray FromFeatures(const FeatureTensor& f) {
  RealArray out({f.channels, f.frames, f.bands});
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

FeatureTensor ToFeatures(const RealArray& a, FeatureLayout layout) {
  ExpectDims(a, 3, "features");
  FeatureTensor f(layout, a.shape(0), a.shape(1), a.shape(2));
  std::copy(a.data(), a.data() + a.size(), f.values.begin());
  return f;
}

// Trackwise labels as a (directions [K, T, 3], probabilities [K, T, C]) pair.
py::tuple FromLabels(const ClipLabels& l) {
  RealArray dirs({l.num_tracks(), l.num_frames(), std::size_t{3}});
  RealArray probs({l.num_tracks(), l.num_frames(), l.num_classes()});
  auto d = dirs.mutable_unchecked<3>();
  auto p = probs.mutable_unchecked<3>();
  for (std::size_t k = 0; k < l.num_tracks(); ++k) {
    for (std::size_t t = 0; t < l.num_frames(); ++t) {
      const DirectionVector& v = l.direction(k, t);
      d(k, t, 0) = v.x;
      d(k, t, 1) = v.y;
      d(k, t, 2) = v.z;
      for (std::size_t c = 0; c < l.num_classes(); ++c) p(k, t, c) = l.class_prob(k, t, c);
    }
  }
  return py::make_tuple(dirs, probs);
}

ClipLabels ToLabels(const RealArray& dirs, const RealArray& probs) {
  ExpectDims(dirs, 3, "directions");
  ExpectDims(probs, 3, "probabilities");
  if (dirs.shape(0) != probs.shape(0) || dirs.shape(1) != probs.shape(1) ||
      dirs.shape(2) != 3) {
    throw Error(ErrorCode::kShape, "python",
                "directions must be [K, T, 3] matching probabilities [K, T, C]");
  }
  ClipLabels l(dirs.shape(0), dirs.shape(1), probs.shape(2));
  auto d = dirs.unchecked<3>();
  auto p = probs.unchecked<3>();
  for (py::ssize_t k = 0; k < d.shape(0); ++k) {
    for (py::ssize_t t = 0; t < d.shape(1); ++t) {
      l.set_direction(k, t, {d(k, t, 0), d(k, t, 1), d(k, t, 2)});
      for (py::ssize_t c = 0; c < p.shape(2); ++c) l.set_class_prob(k, t, c, p(k, t, c));
    }
  }
  return l;
}

py::dict ReportDict(const MetricsReport& r) {
  py::dict out;
  auto put = [&](const char* key, const std::optional<double>& v) {
    out[key] = v ? py::cast(*v) : py::none();
  };
  put("er20", r.er20);
  put("f20", r.f20);
  put("le_cd", r.le_cd);
  put("lr_cd", r.lr_cd);
  put("seld_score", r.seld_score);
  return out;
}

FrameDoas EventsToDoas(const std::string& csv, std::size_t classes,
                       std::size_t frames) {
  return FrameDoasFromEvents(ParseMetadataCsv(csv, classes), frames);
}

std::size_t FrameSpan(const std::string& a, const std::string& b,
                      std::size_t classes) {
  int last = 0;
  for (const auto* text : {&a, &b}) {
    for (const EventInstance& e : ParseMetadataCsv(*text, classes)) {
      last = std::max(last, e.offset_frame);
    }
  }
  return static_cast<std::size_t>(last);
}

FusionWeights WeightsFromDict(const py::dict& d) {
  FusionWeights w;
  w.query = d["query"].cast<Matrix>();
  w.key = d["key"].cast<Matrix>();
  w.value = d["value"].cast<Matrix>();
  w.output = d["output"].cast<Matrix>();
  w.gate = d["gate"].cast<Matrix>();
  w.guide_embed = d["guide_embed"].cast<Matrix>();
  return w;
}

py::dict WeightsToDict(const FusionWeights& w) {
  py::dict d;
  d["query"] = w.query;
  d["key"] = w.key;
  d["value"] = w.value;
  d["output"] = w.output;
  d["gate"] = w.gate;
  d["guide_embed"] = w.guide_embed;
  return d;
}

}  // namespace
}  // namespace seld

PYBIND11_MODULE(_seldkit, m) {
  using namespace seld;
  m.doc() = "Sound event localization and detection toolkit";

  static PyObject* seld_error = nullptr;
  seld_error = py::exception<Error>(m, "SeldError", PyExc_ValueError).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = py::reinterpret_borrow<py::object>(seld_error);
      py::object inst = type(std::string(e.what()));
      inst.attr("code") = ErrorCodeName(e.code());
      PyErr_SetObject(seld_error, inst.ptr());
    }
  });

  m.def("azel_to_unit", [](double az, double el) {
    const DirectionVector d = AzElToUnit({az, el});
    return std::vector<double>{d.x, d.y, d.z};
  }, py::arg("azimuth"), py::arg("elevation"));
  m.def("unit_to_azel", [](double x, double y, double z) {
    const AzEl a = UnitToAzEl({x, y, z});
    return py::make_tuple(a.azimuth, a.elevation);
  });
  m.def("angular_distance", [](std::vector<double> a, std::vector<double> b) {
    if (a.size() != 3 || b.size() != 3) {
      throw Error(ErrorCode::kShape, "python", "directions need 3 components");
    }
    return AngularDistance({a[0], a[1], a[2]}, {b[0], b[1], b[2]});
  });

  m.def("stft", [](const RealArray& audio, int sample_rate, double window_s,
                   double hop_s) {
    return FromSpectral(Stft(ToClip(audio, sample_rate), window_s, hop_s));
  }, py::arg("audio"), py::arg("sample_rate") = kDefaultSampleRate,
     py::arg("window_s") = kDefaultWindowS, py::arg("hop_s") = kDefaultHopS,
     "Complex spectrum [channels, frames, bins] of [channels, samples] audio.");
  m.def("istft", [](const ComplexArray& spec, int sample_rate, double hop_s) {
    return FromClip(Istft(ToSpectral(spec, sample_rate,
                                     SecondsToSamples(hop_s, sample_rate))));
  }, py::arg("spectrum"), py::arg("sample_rate") = kDefaultSampleRate,
     py::arg("hop_s") = kDefaultHopS);
  m.def("logmel", [](const ComplexArray& spec, int sample_rate, double hop_s,
                     std::size_t n_mels, double floor) {
    return FromFeatures(LogMel(ToSpectral(spec, sample_rate,
                                          SecondsToSamples(hop_s, sample_rate)),
                               n_mels, floor));
  }, py::arg("spectrum"), py::arg("sample_rate") = kDefaultSampleRate,
     py::arg("hop_s") = kDefaultHopS, py::arg("n_mels") = kDefaultMelBands,
     py::arg("floor") = kDefaultLogFloor);
  m.def("intensity_vectors", [](const ComplexArray& spec, int sample_rate,
                                double hop_s, std::size_t n_mels) {
    return FromFeatures(IntensityVectors(
        ToSpectral(spec, sample_rate, SecondsToSamples(hop_s, sample_rate)),
        n_mels));
  }, py::arg("spectrum"), py::arg("sample_rate") = kDefaultSampleRate,
     py::arg("hop_s") = kDefaultHopS, py::arg("n_mels") = kDefaultMelBands);

  m.def("encode_foa", [](const std::string& scene_json) {
    return FromClip(EncodeFoa(ParseSceneJson(scene_json)));
  }, py::arg("scene_json"), "FoA (W, X, Y, Z) rendering of a JSON scene.");
  m.def("render_mic_array", [](const std::string& scene_json) {
    const SceneConfig scene = ParseSceneJson(scene_json);
    return FromClip(RenderMicArray(
        scene, MicArrayGeometry::Tetrahedral(scene.array_radius_m)));
  }, py::arg("scene_json"));
  m.def("ground_truth_csv", [](const std::string& scene_json) {
    return SerializeMetadataCsv(GroundTruthEvents(ParseSceneJson(scene_json)));
  }, py::arg("scene_json"));

  m.def("estimate_doa", [](const RealArray& ivs, const RealArray& logmels,
                           double threshold_db, std::size_t frames_per_label) {
    DoaOracleOptions opts;
    opts.activity_threshold_db = threshold_db;
    opts.frames_per_label = frames_per_label;
    return FromLabels(EstimateDoaIv(ToFeatures(ivs, FeatureLayout::kIntensity),
                                    ToFeatures(logmels, FeatureLayout::kLogMel),
                                    opts));
  }, py::arg("ivs"), py::arg("logmels"), py::arg("threshold_db") = -40.0,
     py::arg("frames_per_label") = 5);

  m.def("ds_beamform", [](const ComplexArray& spec, const RealArray& dirs,
                          const RealArray& probs, int sample_rate, double hop_s,
                          double array_radius_m, double source_distance_m) {
    BeamformOptions opts;
    opts.source_distance_m = source_distance_m;
    return FromSpectral(DsBeamform(
        ToSpectral(spec, sample_rate, SecondsToSamples(hop_s, sample_rate)),
        ToLabels(dirs, probs), MicArrayGeometry::Tetrahedral(array_radius_m),
        opts));
  }, py::arg("spectrum"), py::arg("directions"), py::arg("probabilities"),
     py::arg("sample_rate") = kDefaultSampleRate,
     py::arg("hop_s") = kDefaultHopS,
     py::arg("array_radius_m") = kDefaultArrayRadius,
     py::arg("source_distance_m") = 1.0,
     "Per-track beams [tracks, frames, bins] of a tetrahedral recording.");

  m.def("reorder_csv", [](const std::string& csv, std::size_t tracks,
                          std::size_t frames, std::size_t classes) {
    return FromLabels(
        ReorderScene(ParseMetadataCsv(csv, classes), tracks, frames, classes));
  }, py::arg("csv"), py::arg("tracks") = kDefaultTracks, py::arg("frames"),
     py::arg("classes") = kDefaultClasses);
  m.def("collapse_tracks", [](const RealArray& dirs, const RealArray& probs) {
    const ClassActivity a = CollapseTracks(ToLabels(dirs, probs));
    RealArray out({a.frames, a.classes});
    std::copy(a.values.begin(), a.values.end(), out.mutable_data());
    return out;
  });

  m.def("hungarian", [](const RealArray& cost) {
    ExpectDims(cost, 2, "cost");
    CostMatrix c(cost.shape(0), cost.shape(1));
    std::copy(cost.data(), cost.data() + cost.size(), c.values.begin());
    const Assignment a = Hungarian(c);
    return py::make_tuple(a.row_to_col, a.cost);
  }, py::arg("cost"), "Minimum-cost assignment: (column per row or -1, cost).");
  m.def("pit_doa_loss", [](const RealArray& pd, const RealArray& pp,
                           const RealArray& rd, const RealArray& rp) {
    const PitResult r = PitDoaLoss(ToLabels(pd, pp), ToLabels(rd, rp));
    return py::make_tuple(r.loss, r.permutation);
  });
  m.def("pit_sed_loss", [](const RealArray& pd, const RealArray& pp,
                           const RealArray& rd, const RealArray& rp) {
    const PitResult r = PitSedLoss(ToLabels(pd, pp), ToLabels(rd, rp));
    return py::make_tuple(r.loss, r.permutation);
  });

  m.def("seld_score", &SeldScore, py::arg("er"), py::arg("f"), py::arg("le"),
        py::arg("lr"));
  m.def("seld_metrics", [](const std::string& pred_csv,
                           const std::string& ref_csv, std::size_t classes,
                           double threshold_deg) {
    const std::size_t frames = FrameSpan(pred_csv, ref_csv, classes);
    MetricsConfig cfg;
    cfg.classes = classes;
    cfg.threshold_deg = threshold_deg;
    return ReportDict(ComputeSeldMetrics(EventsToDoas(pred_csv, classes, frames),
                                         EventsToDoas(ref_csv, classes, frames),
                                         cfg));
  }, py::arg("pred_csv"), py::arg("ref_csv"),
     py::arg("classes") = kDefaultClasses,
     py::arg("threshold_deg") = kDoaThresholdDeg,
     "ER, F, LE, LR and SELD score of two metadata CSV texts.");

  m.def("random_fusion_weights", [](std::size_t channels, std::size_t guide_dim,
                                    std::size_t classes, std::uint64_t seed) {
    FusionConfig cfg;
    cfg.cnn_channels = channels;
    cfg.guide_dim = guide_dim;
    cfg.classes = classes;
    return WeightsToDict(RandomFusionWeights(cfg, seed));
  }, py::arg("channels") = 64, py::arg("guide_dim") = 64,
     py::arg("classes") = kDefaultClasses, py::arg("seed") = 0);
  m.def("fusion_attention", [](const Matrix& cnn, const Matrix& guide,
                               const py::dict& w) {
    return SaamAttention(cnn, guide, WeightsFromDict(w));
  });
  m.def("fusion_forward", [](const Matrix& cnn, const Matrix& guide,
                             const py::dict& w) {
    return FusionStage(cnn, guide, WeightsFromDict(w));
  }, py::arg("cnn_features"), py::arg("guide_features"), py::arg("weights"));
}
