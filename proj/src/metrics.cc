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

#include "seld/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "seld/assign.h"
#include "seld/error.h"

namespace seld {

FrameDoas FrameDoasFromLabels(const ClipLabels& labels) {
  FrameDoas out(labels.num_frames());
  for (std::size_t t = 0; t < labels.num_frames(); ++t) {
    for (std::size_t k = 0; k < labels.num_tracks(); ++k) {
      const int cls = labels.class_id(k, t);
      if (cls < 0 || labels.direction(k, t).IsInactive()) continue;
      out[t].push_back({cls, labels.direction(k, t)});
    }
  }
  return out;
}

FrameDoas FrameDoasFromEvents(std::span<const EventInstance> events,
                              std::size_t frames) {
  FrameDoas out(frames);
  for (const EventInstance& e : events) {
    for (int f = std::max(0, e.onset_frame); f < e.offset_frame; ++f) {
      if (static_cast<std::size_t>(f) >= frames) break;
      out[static_cast<std::size_t>(f)].push_back(
          {e.class_id,
           e.directions[static_cast<std::size_t>(f - e.onset_frame)]});
    }
  }
  return out;
}

namespace {

// Indices of `doas` whose class is `cls`.
std::vector<std::size_t> OfClass(const std::vector<LabeledDoa>& doas, int cls) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < doas.size(); ++i) {
    if (doas[i].class_id == cls) out.push_back(i);
  }
  return out;
}

// Matches references (rows) to predictions (columns) on angle.
void MatchGroup(std::size_t frame, int cls, const std::vector<LabeledDoa>& pred,
                const std::vector<std::size_t>& pred_idx,
                const std::vector<LabeledDoa>& ref,
                const std::vector<std::size_t>& ref_idx, double threshold,
                std::vector<FrameMatch>& out) {
  if (pred_idx.empty() || ref_idx.empty()) return;
  CostMatrix cost(ref_idx.size(), pred_idx.size());
  for (std::size_t r = 0; r < ref_idx.size(); ++r) {
    for (std::size_t p = 0; p < pred_idx.size(); ++p) {
      cost.at(r, p) = AngularDistance(ref[ref_idx[r]].direction,
                                      pred[pred_idx[p]].direction);
    }
  }
  const Assignment a = Hungarian(cost);
  for (std::size_t r = 0; r < ref_idx.size(); ++r) {
    if (a.row_to_col[r] < 0) continue;
    const auto p = static_cast<std::size_t>(a.row_to_col[r]);
    const double angle = cost.at(r, p);
    out.push_back({frame, cls, ref_idx[r], pred_idx[p], angle,
                   angle <= threshold});
  }
}

std::size_t FrameCount(const FrameDoas& a, const FrameDoas& b) {
  return std::max(a.size(), b.size());
}

const std::vector<LabeledDoa>& FrameAt(const FrameDoas& f, std::size_t t) {
  static const std::vector<LabeledDoa> kEmpty;
  return t < f.size() ? f[t] : kEmpty;
}

void CheckClasses(const FrameDoas& doas, std::size_t classes) {
  for (const auto& frame : doas) {
    for (const LabeledDoa& d : frame) {
      if (d.class_id < 0 || static_cast<std::size_t>(d.class_id) >= classes) {
        throw Error(ErrorCode::kRange, "metrics",
                    "class " + std::to_string(d.class_id) + " outside [0, " +
                        std::to_string(classes) + ")");
      }
    }
  }
}

}  // namespace

std::vector<FrameMatch> MatchEvents(const FrameDoas& pred, const FrameDoas& ref,
                                    const MetricsConfig& cfg) {
  CheckClasses(pred, cfg.classes);
  CheckClasses(ref, cfg.classes);
  std::vector<FrameMatch> out;
  for (std::size_t t = 0; t < FrameCount(pred, ref); ++t) {
    const auto& p = FrameAt(pred, t);
    const auto& r = FrameAt(ref, t);
    for (std::size_t c = 0; c < cfg.classes; ++c) {
      const int cls = static_cast<int>(c);
      MatchGroup(t, cls, p, OfClass(p, cls), r, OfClass(r, cls),
                 cfg.threshold_deg, out);
    }
  }
  return out;
}

SeldCounts& SeldCounts::operator+=(const SeldCounts& other) {
  if (per_class.size() < other.per_class.size()) {
    per_class.resize(other.per_class.size());
  }
  for (std::size_t c = 0; c < other.per_class.size(); ++c) {
    ClassCounts& a = per_class[c];
    const ClassCounts& b = other.per_class[c];
    a.tp += b.tp;
    a.fp += b.fp;
    a.fn += b.fn;
    a.refs += b.refs;
    a.matched += b.matched;
    a.angle_sum += b.angle_sum;
  }
  substitutions += other.substitutions;
  deletions += other.deletions;
  insertions += other.insertions;
  ref_total += other.ref_total;
  return *this;
}

SeldCounts CountSeld(const FrameDoas& pred, const FrameDoas& ref,
                     const MetricsConfig& cfg) {
  if (cfg.segment_frames == 0) {
    throw Error(ErrorCode::kConfiguration, "metrics", "zero segment length");
  }
  CheckClasses(pred, cfg.classes);
  CheckClasses(ref, cfg.classes);
  SeldCounts counts;
  counts.per_class.resize(cfg.classes);
  const std::size_t frames = FrameCount(pred, ref);
  long seg_fn = 0;
  long seg_fp = 0;
  auto close_segment = [&] {
    counts.substitutions += std::min(seg_fn, seg_fp);
    counts.deletions += std::max(0L, seg_fn - seg_fp);
    counts.insertions += std::max(0L, seg_fp - seg_fn);
    seg_fn = seg_fp = 0;
  };
  std::vector<FrameMatch> matches;
  for (std::size_t t = 0; t < frames; ++t) {
    const auto& p = FrameAt(pred, t);
    const auto& r = FrameAt(ref, t);
    for (std::size_t c = 0; c < cfg.classes; ++c) {
      const int cls = static_cast<int>(c);
      const std::vector<std::size_t> pi = OfClass(p, cls);
      const std::vector<std::size_t> ri = OfClass(r, cls);
      matches.clear();
      MatchGroup(t, cls, p, pi, r, ri, cfg.threshold_deg, matches);
      ClassCounts& cc = counts.per_class[c];
      long tp = 0;
      for (const FrameMatch& m : matches) {
        cc.angle_sum += m.angle_deg;
        if (m.within_threshold) ++tp;
      }
      const long n_pred = static_cast<long>(pi.size());
      const long n_ref = static_cast<long>(ri.size());
      cc.tp += tp;
      cc.fp += n_pred - tp;
      cc.fn += n_ref - tp;
      cc.refs += n_ref;
      cc.matched += static_cast<long>(matches.size());
      seg_fp += n_pred - tp;
      seg_fn += n_ref - tp;
      counts.ref_total += n_ref;
    }
    if ((t + 1) % cfg.segment_frames == 0) close_segment();
  }
  close_segment();
  return counts;
}

double SeldScore(double er, double f_pct, double le_deg, double lr_pct) {
  return (er + (1.0 - f_pct / 100.0) + le_deg / 180.0 +
          (1.0 - lr_pct / 100.0)) /
         4.0;
}

MetricsReport SeldMetricsFromCounts(const SeldCounts& counts) {
  MetricsReport r;
  const long errors =
      counts.substitutions + counts.deletions + counts.insertions;
  if (counts.ref_total > 0) {
    r.er20 = static_cast<double>(errors) / static_cast<double>(counts.ref_total);
  } else if (errors == 0) {
    r.er20 = 0.0;
  }
  double f_sum = 0.0, le_sum = 0.0, lr_sum = 0.0;
  int f_n = 0, le_n = 0, lr_n = 0;
  for (const ClassCounts& c : counts.per_class) {
    const long denom = 2 * c.tp + c.fp + c.fn;
    if (denom > 0) {
      f_sum += 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
      ++f_n;
    }
    if (c.matched > 0) {
      le_sum += c.angle_sum / static_cast<double>(c.matched);
      ++le_n;
    }
    if (c.refs > 0) {
      lr_sum += static_cast<double>(c.matched) / static_cast<double>(c.refs);
      ++lr_n;
    }
  }
  if (f_n > 0 && counts.ref_total > 0) r.f20 = 100.0 * f_sum / f_n;
  if (le_n > 0) r.le_cd = le_sum / le_n;
  if (lr_n > 0) r.lr_cd = 100.0 * lr_sum / lr_n;
  if (r.er20 && r.f20 && r.le_cd && r.lr_cd) {
    r.seld_score = SeldScore(*r.er20, *r.f20, *r.le_cd, *r.lr_cd);
  }
  return r;
}

MetricsReport ComputeSeldMetrics(const FrameDoas& pred, const FrameDoas& ref,
                                 const MetricsConfig& cfg) {
  return SeldMetricsFromCounts(CountSeld(pred, ref, cfg));
}

MetricsReport ComputeSeldMetrics(const ClipLabels& pred, const ClipLabels& ref,
                                 const MetricsConfig& cfg) {
  return ComputeSeldMetrics(FrameDoasFromLabels(pred), FrameDoasFromLabels(ref),
                            cfg);
}

DoaMetrics ComputeDoaMetrics(const FrameDoas& pred, const FrameDoas& ref,
                             double threshold_deg) {
  DoaMetrics m;
  long within = 0;
  double angle_sum = 0.0;
  for (std::size_t t = 0; t < FrameCount(pred, ref); ++t) {
    const auto& p = FrameAt(pred, t);
    const auto& r = FrameAt(ref, t);
    m.refs += static_cast<long>(r.size());
    if (p.empty() || r.empty()) continue;
    CostMatrix cost(r.size(), p.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t j = 0; j < p.size(); ++j) {
        cost.at(i, j) = AngularDistance(r[i].direction, p[j].direction);
      }
    }
    const Assignment a = Hungarian(cost);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (a.row_to_col[i] < 0) continue;
      const double angle = cost.at(i, static_cast<std::size_t>(a.row_to_col[i]));
      ++m.matched;
      angle_sum += angle;
      if (angle <= threshold_deg) ++within;
    }
  }
  if (m.refs == 0) {
    throw Error(ErrorCode::kUndefinedMetric, "metrics",
                "no references for DoA metrics");
  }
  const double refs = static_cast<double>(m.refs);
  m.acc = 100.0 * static_cast<double>(within) / refs;
  m.mdr = 100.0 * static_cast<double>(m.refs - m.matched) / refs;
  if (m.matched > 0) m.mae = angle_sum / static_cast<double>(m.matched);
  return m;
}

double SegmentFMacro(const ClassActivity& pred, const ClassActivity& ref,
                     std::size_t frames_per_segment) {
  if (pred.classes != ref.classes) {
    throw Error(ErrorCode::kShape, "metrics",
                "prediction and reference class counts differ");
  }
  if (frames_per_segment == 0) {
    throw Error(ErrorCode::kConfiguration, "metrics", "zero segment length");
  }
  const std::size_t frames = std::max(pred.frames, ref.frames);
  const std::size_t segments =
      (frames + frames_per_segment - 1) / frames_per_segment;
  auto seg_active = [&](const ClassActivity& a, std::size_t s, std::size_t c) {
    const std::size_t end = std::min(a.frames, (s + 1) * frames_per_segment);
    for (std::size_t t = s * frames_per_segment; t < end; ++t) {
      if (a.at(t, c) >= 0.5) return true;
    }
    return false;
  };
  double f_sum = 0.0;
  int n = 0;
  for (std::size_t c = 0; c < ref.classes; ++c) {
    long tp = 0, fp = 0, fn = 0;
    for (std::size_t s = 0; s < segments; ++s) {
      const bool p = seg_active(pred, s, c);
      const bool r = seg_active(ref, s, c);
      tp += p && r;
      fp += p && !r;
      fn += !p && r;
    }
    if (tp + fn == 0) continue;
    f_sum += 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
    ++n;
  }
  if (n == 0) {
    throw Error(ErrorCode::kUndefinedMetric, "metrics",
                "no reference class is active");
  }
  return f_sum / n;
}

namespace {

std::string Format(const std::optional<double>& v) {
  if (!v) return "undefined";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", *v);
  return buf;
}

}  // namespace

std::string MetricsReport::ToKeyValue() const {
  std::string s;
  s += "er20=" + Format(er20) + "\n";
  s += "f20=" + Format(f20) + "\n";
  s += "le_cd=" + Format(le_cd) + "\n";
  s += "lr_cd=" + Format(lr_cd) + "\n";
  s += "seld_score=" + Format(seld_score) + "\n";
  s += "acc=" + Format(acc) + "\n";
  s += "mdr=" + Format(mdr) + "\n";
  s += "mae=" + Format(mae) + "\n";
  s += "f_macro=" + Format(f_macro) + "\n";
  return s;
}

std::string MetricsReport::CsvHeader() {
  return "er20,f20,le_cd,lr_cd,seld_score,acc,mdr,mae,f_macro\n";
}

std::string MetricsReport::ToCsvRow() const {
  return Format(er20) + "," + Format(f20) + "," + Format(le_cd) + "," +
         Format(lr_cd) + "," + Format(seld_score) + "," + Format(acc) + "," +
         Format(mdr) + "," + Format(mae) + "," + Format(f_macro) + "\n";
}

}  // namespace seld
