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

#include "seld/trackwise.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <tuple>

#include "seld/error.h"

namespace seld {

ClipLabels::ClipLabels(std::size_t tracks, std::size_t frames,
                       std::size_t classes)
    : tracks_(tracks),
      frames_(frames),
      classes_(classes),
      probs_(tracks * frames * classes, 0.0),
      dirs_(tracks * frames) {}

double ClipLabels::activity(std::size_t k, std::size_t t) const {
  const double* row = &probs_[(k * frames_ + t) * classes_];
  return classes_ == 0 ? 0.0 : *std::max_element(row, row + classes_);
}

int ClipLabels::class_id(std::size_t k, std::size_t t) const {
  const double* row = &probs_[(k * frames_ + t) * classes_];
  if (classes_ == 0) return -1;
  const double* best = std::max_element(row, row + classes_);
  return *best >= 0.5 ? static_cast<int>(best - row) : -1;
}

void ClipLabels::SetEvent(std::size_t k, std::size_t t, int class_id,
                          const DirectionVector& d) {
  if (class_id < 0 || static_cast<std::size_t>(class_id) >= classes_) {
    throw Error(ErrorCode::kRange, "trackwise",
                "class " + std::to_string(class_id) + " outside [0, " +
                    std::to_string(classes_) + ")");
  }
  double* row = &probs_[(k * frames_ + t) * classes_];
  std::fill(row, row + classes_, 0.0);
  row[class_id] = 1.0;
  dirs_[k * frames_ + t] = d;
}

void ClipLabels::ClearCell(std::size_t k, std::size_t t) {
  double* row = &probs_[(k * frames_ + t) * classes_];
  std::fill(row, row + classes_, 0.0);
  dirs_[k * frames_ + t] = DirectionVector::Inactive();
}

ClipLabels ClipLabels::PermuteTracks(std::span<const int> order) const {
  if (order.size() != tracks_) {
    throw Error(ErrorCode::kShape, "trackwise", "permutation size mismatch");
  }
  ClipLabels out(tracks_, frames_, classes_);
  for (std::size_t k = 0; k < tracks_; ++k) {
    const std::size_t src = static_cast<std::size_t>(order[k]);
    std::copy_n(&probs_[src * frames_ * classes_], frames_ * classes_,
                &out.probs_[k * frames_ * classes_]);
    std::copy_n(&dirs_[src * frames_], frames_, &out.dirs_[k * frames_]);
  }
  return out;
}

std::vector<int> AssignTracks(std::span<const EventInstance> events,
                              std::size_t tracks) {
  std::vector<std::size_t> order(events.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(events[a].onset_frame, events[a].class_id, a) <
           std::tie(events[b].onset_frame, events[b].class_id, b);
  });
  std::vector<int> track_of(events.size(), -1);
  std::size_t next = 0;
  for (std::size_t i : order) {
    if (next >= tracks) {
      throw Error(ErrorCode::kOverflow, "trackwise",
                  "event #" + std::to_string(i) + " (class " +
                      std::to_string(events[i].class_id) + ", onset frame " +
                      std::to_string(events[i].onset_frame) +
                      ") has no free track; clip already holds " +
                      std::to_string(tracks) + " events");
    }
    track_of[i] = static_cast<int>(next++);
  }
  return track_of;
}

namespace {

void ValidateEvent(const EventInstance& e, std::size_t frames) {
  if (e.onset_frame < 0 || e.offset_frame <= e.onset_frame ||
      static_cast<std::size_t>(e.offset_frame) > frames) {
    throw Error(ErrorCode::kRange, "trackwise",
                "event frames [" + std::to_string(e.onset_frame) + ", " +
                    std::to_string(e.offset_frame) + ") do not fit in " +
                    std::to_string(frames) + " frames");
  }
  if (e.directions.size() != static_cast<std::size_t>(e.length())) {
    throw Error(ErrorCode::kShape, "trackwise",
                "event has " + std::to_string(e.directions.size()) +
                    " directions for " + std::to_string(e.length()) +
                    " frames");
  }
}

void PlaceClip(std::span<const EventInstance> events, std::size_t tracks,
               ClipLabels& out) {
  const std::vector<int> track_of = AssignTracks(events, tracks);
  for (std::size_t i = 0; i < events.size(); ++i) {
    const EventInstance& e = events[i];
    for (int f = e.onset_frame; f < e.offset_frame; ++f) {
      out.SetEvent(static_cast<std::size_t>(track_of[i]),
                   static_cast<std::size_t>(f), e.class_id,
                   e.directions[static_cast<std::size_t>(f - e.onset_frame)]);
    }
  }
}

}  // namespace

ClipLabels ReorderEvents(std::span<const EventInstance> events,
                         std::size_t tracks, std::size_t frames,
                         std::size_t classes) {
  for (const EventInstance& e : events) ValidateEvent(e, frames);
  ClipLabels out(tracks, frames, classes);
  PlaceClip(events, tracks, out);
  return out;
}

ClipLabels ReorderScene(std::span<const EventInstance> events,
                        std::size_t tracks, std::size_t frames,
                        std::size_t classes, std::size_t clip_frames) {
  if (clip_frames == 0) {
    throw Error(ErrorCode::kConfiguration, "trackwise", "zero clip length");
  }
  for (const EventInstance& e : events) ValidateEvent(e, frames);
  ClipLabels out(tracks, frames, classes);
  for (std::size_t start = 0; start < frames; start += clip_frames) {
    const int lo = static_cast<int>(start);
    const int hi = static_cast<int>(std::min(frames, start + clip_frames));
    std::vector<EventInstance> local;
    for (const EventInstance& e : events) {
      const int on = std::max(e.onset_frame, lo);
      const int off = std::min(e.offset_frame, hi);
      if (on >= off) continue;
      EventInstance part = e;
      part.onset_frame = on;
      part.offset_frame = off;
      part.directions.assign(e.directions.begin() + (on - e.onset_frame),
                             e.directions.begin() + (off - e.onset_frame));
      local.push_back(std::move(part));
    }
    PlaceClip(local, tracks, out);
  }
  return out;
}

void CheckConcurrency(std::span<const EventInstance> events,
                      std::size_t tracks) {
  int last = 0;
  for (const EventInstance& e : events) last = std::max(last, e.offset_frame);
  std::vector<std::size_t> count(static_cast<std::size_t>(last), 0);
  for (const EventInstance& e : events) {
    for (int f = std::max(0, e.onset_frame); f < e.offset_frame; ++f) {
      ++count[static_cast<std::size_t>(f)];
    }
  }
  for (std::size_t f = 0; f < count.size(); ++f) {
    if (count[f] > tracks) {
      throw Error(ErrorCode::kOverflow, "trackwise",
                  "frame " + std::to_string(f) + " has " +
                      std::to_string(count[f]) + " concurrent events, more "
                      "than the " + std::to_string(tracks) + " tracks");
    }
  }
}

std::vector<EventInstance> ExtractEvents(const ClipLabels& labels) {
  std::vector<EventInstance> out;
  for (std::size_t k = 0; k < labels.num_tracks(); ++k) {
    EventInstance cur;
    bool open = false;
    for (std::size_t t = 0; t <= labels.num_frames(); ++t) {
      const int cls = t < labels.num_frames() ? labels.class_id(k, t) : -1;
      if (open && cls != cur.class_id) {
        cur.offset_frame = static_cast<int>(t);
        out.push_back(std::move(cur));
        cur = EventInstance{};
        open = false;
      }
      if (cls < 0) continue;
      if (!open) {
        cur.class_id = cls;
        cur.source_id = static_cast<int>(k);
        cur.onset_frame = static_cast<int>(t);
        open = true;
      }
      cur.directions.push_back(labels.direction(k, t));
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const EventInstance& a, const EventInstance& b) {
                     return std::tie(a.onset_frame, a.class_id) <
                            std::tie(b.onset_frame, b.class_id);
                   });
  return out;
}

ClassActivity CollapseTracks(const ClipLabels& labels) {
  ClassActivity out(labels.num_frames(), labels.num_classes());
  for (std::size_t k = 0; k < labels.num_tracks(); ++k) {
    for (std::size_t t = 0; t < labels.num_frames(); ++t) {
      for (std::size_t c = 0; c < labels.num_classes(); ++c) {
        out.at(t, c) = std::max(out.at(t, c), labels.class_prob(k, t, c));
      }
    }
  }
  return out;
}

namespace {

struct CsvRow {
  int frame;
  int class_id;
  int source;
  double azimuth;
  double elevation;
  std::size_t line;
};

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void ParseFail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParse, "trackwise",
              "line " + std::to_string(line) + ": " + what);
}

template <typename T>
T ParseNumber(std::string_view field, std::size_t line, const char* name) {
  field = Trim(field);
  T value{};
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() ||
      field.empty()) {
    ParseFail(line, std::string("malformed ") + name + " '" +
                        std::string(field) + "'");
  }
  return value;
}

std::string FormatDegrees(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

}  // namespace

std::vector<EventInstance> ParseMetadataCsv(std::string_view text,
                                            std::size_t classes) {
  std::vector<CsvRow> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    line = Trim(line);
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    for (std::size_t start = 0;;) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 5) {
      ParseFail(line_no, "expected 5 fields, got " +
                             std::to_string(fields.size()));
    }
    CsvRow row{ParseNumber<int>(fields[0], line_no, "frame"),
               ParseNumber<int>(fields[1], line_no, "class"),
               ParseNumber<int>(fields[2], line_no, "source"),
               ParseNumber<double>(fields[3], line_no, "azimuth"),
               ParseNumber<double>(fields[4], line_no, "elevation"), line_no};
    if (row.frame < 0) ParseFail(line_no, "negative frame index");
    if (row.class_id < 0 || static_cast<std::size_t>(row.class_id) >= classes) {
      throw Error(ErrorCode::kRange, "trackwise",
                  "line " + std::to_string(line_no) + ": class " +
                      std::to_string(row.class_id) + " outside [0, " +
                      std::to_string(classes) + ")");
    }
    // -180 and 180 name the same direction; keep the canonical half-open range.
    if (row.azimuth == -180.0) row.azimuth = 180.0;
    rows.push_back(row);
  }

  std::sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
    return std::tie(a.class_id, a.source, a.frame) <
           std::tie(b.class_id, b.source, b.frame);
  });
  std::vector<EventInstance> events;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const CsvRow& r = rows[i];
    DirectionVector dir;
    try {
      dir = AzElToUnit({r.azimuth, r.elevation});
    } catch (const Error& e) {
      throw Error(ErrorCode::kRange, "trackwise",
                  "line " + std::to_string(r.line) + ": " + e.what());
    }
    const bool extends = i > 0 && !events.empty() &&
                         rows[i - 1].class_id == r.class_id &&
                         rows[i - 1].source == r.source;
    if (extends && rows[i - 1].frame == r.frame) {
      ParseFail(r.line, "duplicate row for frame " + std::to_string(r.frame) +
                            ", class " + std::to_string(r.class_id) +
                            ", source " + std::to_string(r.source));
    }
    if (extends && rows[i - 1].frame + 1 == r.frame) {
      events.back().offset_frame = r.frame + 1;
      events.back().directions.push_back(dir);
      continue;
    }
    EventInstance e;
    e.class_id = r.class_id;
    e.source_id = r.source;
    e.onset_frame = r.frame;
    e.offset_frame = r.frame + 1;
    e.directions.push_back(dir);
    events.push_back(std::move(e));
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const EventInstance& a, const EventInstance& b) {
                     return std::tie(a.onset_frame, a.class_id, a.source_id) <
                            std::tie(b.onset_frame, b.class_id, b.source_id);
                   });
  return events;
}

std::string SerializeMetadataCsv(std::span<const EventInstance> events) {
  struct Row {
    int frame, class_id, source;
    DirectionVector dir;
  };
  std::vector<Row> rows;
  for (const EventInstance& e : events) {
    for (int f = e.onset_frame; f < e.offset_frame; ++f) {
      rows.push_back({f, e.class_id, e.source_id,
                      e.directions[static_cast<std::size_t>(f - e.onset_frame)]});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.frame, a.class_id, a.source) <
           std::tie(b.frame, b.class_id, b.source);
  });
  std::string out;
  for (const Row& r : rows) {
    const AzEl ae = UnitToAzEl(r.dir.Normalized());
    out += std::to_string(r.frame) + "," + std::to_string(r.class_id) + "," +
           std::to_string(r.source) + "," + FormatDegrees(ae.azimuth) + "," +
           FormatDegrees(ae.elevation) + "\n";
  }
  return out;
}

std::vector<EventInstance> ReadMetadataCsv(const std::string& path,
                                           std::size_t classes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "trackwise", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return ParseMetadataCsv(ss.str(), classes);
  } catch (const Error& e) {
    throw Error(e.code(), "trackwise", path + ": " + e.what());
  }
}

void WriteMetadataCsv(const std::string& path,
                      std::span<const EventInstance> events) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "trackwise", "cannot write " + path);
  out << SerializeMetadataCsv(events);
}

}  // namespace seld
