// Copyright 2026 the collide-pred authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COLLIDEPRED_INGEST_HPP_
#define COLLIDEPRED_INGEST_HPP_

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "collidepred/errors.hpp"
#include "collidepred/track.hpp"

namespace collidepred {

enum class StreamFormat { mot, records };

inline StreamFormat format_from_string(const std::string& s) {
  if (s == "mot") return StreamFormat::mot;
  if (s == "records") return StreamFormat::records;
  throw ConfigError("unknown stream format '" + s + "' (expected mot or records)");
}

/// Serialized form of one detection. MOT rows carry a left-top box which is
/// converted to center coordinates on load.
struct TrackRecord {
  std::int64_t frame = 0;
  std::string object_id;
  ClassLabel class_label = ClassLabel::other;
  double x = 0.0;  // left
  double y = 0.0;  // top
  double w = 0.0;
  double h = 0.0;
  double confidence = 1.0;

  ObjectState to_state() const {
    return {frame, object_id, class_label, {x + w / 2.0, y + h / 2.0, w, h}};
  }
};

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace detail {

inline double parse_double(const std::string& tok, int line_no, const char* field) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": field '" + field +
                     "' is not numeric: '" + tok + "'");
  }
  return v;
}

inline void check_box(double w, double h, std::int64_t frame, int line_no) {
  if (!(w > 0.0) || !(h > 0.0)) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": box extent must be positive (w=" + format_double(w) +
                     ", h=" + format_double(h) + ")");
  }
  if (frame < 0) {
    throw ParseError("line " + std::to_string(line_no) + ": negative frame index");
  }
}

}  // namespace detail

/// Parses one MOT-Challenge CSV row `frame,id,x,y,w,h,conf,a,b,c`.
/// The trailing a,b,c fields are ignored; class defaults to `other`.
inline TrackRecord parse_mot(const std::string& line, int line_no = 0) {
  std::vector<std::string> tok;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) tok.push_back(cur);
  if (tok.size() != 10) {
    throw ParseError("line " + std::to_string(line_no) + ": expected 10 fields, got " +
                     std::to_string(tok.size()));
  }
  TrackRecord r;
  r.frame = static_cast<std::int64_t>(detail::parse_double(tok[0], line_no, "frame"));
  r.object_id = tok[1];
  r.x = detail::parse_double(tok[2], line_no, "x");
  r.y = detail::parse_double(tok[3], line_no, "y");
  r.w = detail::parse_double(tok[4], line_no, "w");
  r.h = detail::parse_double(tok[5], line_no, "h");
  r.confidence = detail::parse_double(tok[6], line_no, "conf");
  detail::check_box(r.w, r.h, r.frame, line_no);
  return r;
}

/// Parses one self-describing record line (JSON object) with keys
/// frame, id, class, cx, cy, w, h. Unknown keys are ignored; unknown class
/// names fall back to `other`.
inline TrackRecord parse_record_line(const std::string& line, int line_no = 0) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
  }
  for (const char* key : {"frame", "id", "class", "cx", "cy", "w", "h"}) {
    if (!j.contains(key)) {
      throw ParseError("line " + std::to_string(line_no) + ": missing key '" +
                       key + "'");
    }
  }
  TrackRecord r;
  try {
    r.frame = j["frame"].get<std::int64_t>();
    r.object_id = j["id"].is_string() ? j["id"].get<std::string>()
                                      : j["id"].dump();
    r.class_label = class_from_string(j["class"].get<std::string>());
    const double cx = j["cx"].get<double>();
    const double cy = j["cy"].get<double>();
    r.w = j["w"].get<double>();
    r.h = j["h"].get<double>();
    r.x = cx - r.w / 2.0;
    r.y = cy - r.h / 2.0;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
  }
  detail::check_box(r.w, r.h, r.frame, line_no);
  return r;
}

inline std::string record_to_line(const ObjectState& s, StreamFormat format) {
  if (format == StreamFormat::mot) {
    std::string out;
    out += std::to_string(s.frame);
    out += ',' + s.object_id;
    out += ',' + format_double(s.box.cx - s.box.w / 2.0);
    out += ',' + format_double(s.box.cy - s.box.h / 2.0);
    out += ',' + format_double(s.box.w);
    out += ',' + format_double(s.box.h);
    out += ",1,-1,-1,-1";
    return out;
  }
  nlohmann::json j;
  j["frame"] = s.frame;
  j["id"] = s.object_id;
  j["class"] = to_string(s.class_label);
  j["cx"] = s.box.cx;
  j["cy"] = s.box.cy;
  j["w"] = s.box.w;
  j["h"] = s.box.h;
  return j.dump();
}

inline void sort_stream(std::vector<ObjectState>& states) {
  std::sort(states.begin(), states.end(),
            [](const ObjectState& a, const ObjectState& b) {
              return std::tie(a.frame, a.object_id) < std::tie(b.frame, b.object_id);
            });
}

inline std::vector<ObjectState> parse_stream(std::istream& in, StreamFormat format,
                                             const std::string& context) {
  std::vector<ObjectState> states;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const TrackRecord rec = format == StreamFormat::mot
                                  ? parse_mot(line, line_no)
                                  : parse_record_line(line, line_no);
      states.push_back(rec.to_state());
    } catch (const ParseError& e) {
      throw ParseError(context + ": " + e.what());
    }
  }
  sort_stream(states);
  return states;
}

/// Loads a track file into a single stream ordered by (frame, object_id).
inline std::vector<ObjectState> load_stream(const std::string& path,
                                            StreamFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_stream(in, format, path);
}

inline void write_stream(const std::string& path,
                         const std::vector<ObjectState>& states,
                         StreamFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  for (const auto& s : states) out << record_to_line(s, format) << '\n';
}

/// Groups a sorted stream into per-frame batches for the engine loop.
inline std::vector<std::vector<ObjectState>> group_by_frame(
    const std::vector<ObjectState>& states) {
  std::vector<std::vector<ObjectState>> groups;
  for (const auto& s : states) {
    if (groups.empty() || groups.back().front().frame != s.frame) {
      groups.emplace_back();
    }
    groups.back().push_back(s);
  }
  return groups;
}

/// Fills per-object frame gaps of length <= max_gap by linear interpolation
/// of cx, cy, w, h. Longer gaps are left open; the engine re-registers the
/// object with a fresh window when it reappears. Idempotent.
inline std::vector<ObjectState> interpolate_gaps(std::vector<ObjectState> states,
                                                 int max_gap) {
  sort_stream(states);
  std::map<std::string, const ObjectState*> prev;
  std::vector<ObjectState> fills;
  for (const auto& s : states) {
    auto it = prev.find(s.object_id);
    if (it != prev.end()) {
      const ObjectState& a = *it->second;
      const std::int64_t gap = s.frame - a.frame - 1;
      if (gap >= 1 && gap <= max_gap) {
        for (std::int64_t f = a.frame + 1; f < s.frame; ++f) {
          const double t = static_cast<double>(f - a.frame) /
                           static_cast<double>(s.frame - a.frame);
          ObjectState mid = a;
          mid.frame = f;
          mid.box.cx = a.box.cx + t * (s.box.cx - a.box.cx);
          mid.box.cy = a.box.cy + t * (s.box.cy - a.box.cy);
          mid.box.w = a.box.w + t * (s.box.w - a.box.w);
          mid.box.h = a.box.h + t * (s.box.h - a.box.h);
          fills.push_back(mid);
        }
      }
    }
    prev[s.object_id] = &s;
  }
  states.insert(states.end(), fills.begin(), fills.end());
  sort_stream(states);
  return states;
}

}  // namespace collidepred

#endif  // COLLIDEPRED_INGEST_HPP_
