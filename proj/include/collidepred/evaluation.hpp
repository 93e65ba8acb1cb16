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

#ifndef COLLIDEPRED_EVALUATION_HPP_
#define COLLIDEPRED_EVALUATION_HPP_

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "collidepred/engine.hpp"
#include "collidepred/errors.hpp"
#include "collidepred/simulator.hpp"

namespace collidepred {

/// Per-scene scoring outcome (one Table-style row).
struct SceneEval {
  std::string name;
  bool has_collision = false;
  bool tp = false;
  std::int64_t frames_in_advance = 0;
  double time_in_advance = 0.0;  // seconds, unrounded
  int fp_events = 0;
  int total_alert_events = 0;
  bool miss = false;

  double fp_percent() const {
    return total_alert_events == 0
               ? 0.0
               : 100.0 * fp_events / static_cast<double>(total_alert_events);
  }
};

struct EvalReport {
  std::vector<SceneEval> scenes;

  int total_alerts() const {
    int n = 0;
    for (const auto& s : scenes) n += s.total_alert_events;
    return n;
  }
  int total_fp() const {
    int n = 0;
    for (const auto& s : scenes) n += s.fp_events;
    return n;
  }
  double fp_percent() const {
    const int total = total_alerts();
    return total == 0 ? 0.0 : 100.0 * total_fp() / static_cast<double>(total);
  }
  /// Mean lead over scenes with a matched collision.
  double mean_time_in_advance() const {
    double sum = 0.0;
    int n = 0;
    for (const auto& s : scenes) {
      if (s.tp) {
        sum += s.time_in_advance;
        ++n;
      }
    }
    return n == 0 ? 0.0 : sum / n;
  }
};

/// Scores one scene's alert stream against its ground truth. An alert is a
/// true positive iff its pair matches the GT pair and it was emitted within
/// `lookahead` frames before the GT collision frame; the earliest TP defines
/// the lead. Every other alert event counts as a false positive.
inline SceneEval match(const std::vector<CollisionAlert>& alerts,
                       const GroundTruthEvent& gt, std::int64_t lookahead,
                       const std::string& name = "scene") {
  SceneEval eval;
  eval.name = name;
  eval.has_collision = gt.collision_frame.has_value();
  std::int64_t earliest_tp = -1;
  for (const auto& a : alerts) {
    ++eval.total_alert_events;
    bool is_tp = false;
    if (gt.collision_frame && gt.pair &&
        a.id_a == gt.pair->first && a.id_b == gt.pair->second &&
        a.emitted_at >= *gt.collision_frame - lookahead &&
        a.emitted_at < *gt.collision_frame) {
      is_tp = true;
      if (earliest_tp < 0 || a.emitted_at < earliest_tp) {
        earliest_tp = a.emitted_at;
      }
    }
    if (!is_tp) ++eval.fp_events;
  }
  if (earliest_tp >= 0) {
    eval.tp = true;
    eval.frames_in_advance = *gt.collision_frame - earliest_tp;
    eval.time_in_advance = static_cast<double>(eval.frames_in_advance) / gt.fps;
  }
  eval.miss = eval.has_collision && !eval.tp;
  return eval;
}

inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

namespace detail {

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace detail

inline const char* kFpDefinitionNote =
    "# FP% = 100 * false-positive alert events / total alert events "
    "(event-based; 0 when no alerts)";

/// Aligned plain-text table: one row per scene plus an aggregate row.
/// Seconds are displayed with 2 decimals; internal math is unrounded.
inline std::string render_eval_table(const EvalReport& report) {
  std::string out;
  out += kFpDefinitionNote;
  out += '\n';
  const std::vector<std::size_t> widths = {12, 26, 19, 8};
  out += detail::pad("Video", widths[0]) +
         detail::pad("Time-in-Advance (in sec)", widths[1]) +
         detail::pad("Frames in Advance", widths[2]) + "FP (%)\n";
  for (const auto& s : report.scenes) {
    out += detail::pad(s.name, widths[0]);
    out += detail::pad(s.tp ? format_fixed(s.time_in_advance, 2) : "-", widths[1]);
    out += detail::pad(s.tp ? std::to_string(s.frames_in_advance) : "-", widths[2]);
    out += format_fixed(s.fp_percent(), 0);
    if (s.miss) out += "  (miss)";
    out += '\n';
  }
  out += detail::pad("ALL", widths[0]);
  out += detail::pad(format_fixed(report.mean_time_in_advance(), 2), widths[1]);
  out += detail::pad("-", widths[2]);
  out += format_fixed(report.fp_percent(), 0);
  out += '\n';
  return out;
}

/// Machine-readable report: one record per scene plus an aggregate record.
inline std::string render_eval_records(const EvalReport& report) {
  std::string out;
  for (const auto& s : report.scenes) {
    nlohmann::json j;
    j["scene"] = s.name;
    j["tp"] = s.tp;
    j["miss"] = s.miss;
    j["frames_in_advance"] = s.tp ? nlohmann::json(s.frames_in_advance)
                                  : nlohmann::json(nullptr);
    j["time_in_advance"] = s.tp ? nlohmann::json(s.time_in_advance)
                                : nlohmann::json(nullptr);
    j["fp_events"] = s.fp_events;
    j["total_alert_events"] = s.total_alert_events;
    j["fp_percent"] = s.fp_percent();
    out += j.dump();
    out += '\n';
  }
  nlohmann::json agg;
  agg["scene"] = "ALL";
  agg["fp_events"] = report.total_fp();
  agg["total_alert_events"] = report.total_alerts();
  agg["fp_percent"] = report.fp_percent();
  agg["mean_time_in_advance"] = report.mean_time_in_advance();
  out += agg.dump();
  out += '\n';
  return out;
}

/// Side-by-side report for two predictors over the same scenes and config.
struct CompareReport {
  std::string label_a;
  std::string label_b;
  EvalReport report_a;
  EvalReport report_b;
};

/// Two metric columns (FP%, time-in-advance) per predictor, one row per
/// scene, mirrored across both sides.
inline std::string render_compare_table(const CompareReport& cmp) {
  std::string out;
  out += kFpDefinitionNote;
  out += '\n';
  const std::size_t name_w = 12, col_w = 24;
  out += detail::pad("Video", name_w) + detail::pad(cmp.label_a, 2 * col_w) +
         cmp.label_b + '\n';
  out += detail::pad("", name_w);
  for (int i = 0; i < 2; ++i) {
    out += detail::pad("FP (%)", col_w) +
           detail::pad("Time in Advance (sec)", col_w);
  }
  out += '\n';
  for (std::size_t i = 0; i < cmp.report_a.scenes.size(); ++i) {
    const auto& a = cmp.report_a.scenes[i];
    const auto& b = cmp.report_b.scenes[i];
    out += detail::pad(a.name, name_w);
    out += detail::pad(format_fixed(a.fp_percent(), 0), col_w);
    out += detail::pad(a.tp ? format_fixed(a.time_in_advance, 2) : "-", col_w);
    out += detail::pad(format_fixed(b.fp_percent(), 0), col_w);
    out += (b.tp ? format_fixed(b.time_in_advance, 2) : "-");
    out += '\n';
  }
  return out;
}

}  // namespace collidepred

#endif  // COLLIDEPRED_EVALUATION_HPP_
