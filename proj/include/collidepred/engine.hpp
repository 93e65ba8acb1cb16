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

#ifndef COLLIDEPRED_ENGINE_HPP_
#define COLLIDEPRED_ENGINE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "collidepred/deviation.hpp"
#include "collidepred/errors.hpp"
#include "collidepred/geometry.hpp"
#include "collidepred/predictor.hpp"
#include "collidepred/track.hpp"

namespace collidepred {

enum class GatingMode { intersect_only, deviation_gated };

inline std::string to_string(GatingMode g) {
  return g == GatingMode::intersect_only ? "intersect_only" : "deviation_gated";
}

inline GatingMode gating_from_string(const std::string& s) {
  if (s == "intersect_only") return GatingMode::intersect_only;
  if (s == "deviation_gated") return GatingMode::deviation_gated;
  throw ConfigError("unknown gating mode '" + s + "'");
}

struct EngineConfig {
  int P = 10;                  // history window
  int Q = 20;                  // prediction horizon
  int T = 5;                   // prediction cadence
  double fps = 30.0;
  GatingMode gating = GatingMode::intersect_only;
  double overlap_margin = 0.0;
  int dedup_cooldown = 30;
  PredictorSpec predictor;
  double eps_move = 3.0;
  int min_obs = 5;
  int max_gap = 5;

  void validate() const {
    if (P < 2) throw ConfigError("P must be >= 2, got " + std::to_string(P));
    if (Q < 1) throw ConfigError("Q must be >= 1, got " + std::to_string(Q));
    if (T < 1) throw ConfigError("T must be >= 1, got " + std::to_string(T));
    if (!(fps > 0.0)) throw ConfigError("fps must be > 0");
    if (overlap_margin < 0.0) throw ConfigError("overlap_margin must be >= 0");
    if (dedup_cooldown < 0) throw ConfigError("dedup_cooldown must be >= 0");
    if (min_obs < 1) throw ConfigError("min_obs must be >= 1");
    if (max_gap < 0) throw ConfigError("max_gap must be >= 0");
    if (eps_move < 0.0) throw ConfigError("eps_move must be >= 0");
    make_predictor(predictor);
  }
};

struct CollisionAlert {
  std::int64_t emitted_at = 0;
  std::string id_a;  // canonical: id_a < id_b lexicographically
  std::string id_b;
  ClassLabel class_a = ClassLabel::other;
  ClassLabel class_b = ClassLabel::other;
  std::int64_t predicted_collision_frame = 0;
  Vec2 location;
  std::int64_t lead = 0;  // predicted_collision_frame - emitted_at

  bool operator==(const CollisionAlert& o) const = default;
};

/// Earliest common target frame where the two predicted boxes overlap.
/// Location is the midpoint of the two centers at that frame.
inline std::optional<std::pair<std::int64_t, Vec2>> pair_intersection(
    const PredictedTrajectory& a, const PredictedTrajectory& b, double margin) {
  std::size_t ia = 0, ib = 0;
  while (ia < a.points.size() && ib < b.points.size()) {
    const auto& pa = a.points[ia];
    const auto& pb = b.points[ib];
    if (pa.frame < pb.frame) {
      ++ia;
    } else if (pb.frame < pa.frame) {
      ++ib;
    } else {
      if (boxes_overlap(pa.box, pb.box, margin)) {
        const Vec2 mid = (pa.box.center() + pb.box.center()) * 0.5;
        return std::make_pair(pa.frame, mid);
      }
      ++ia;
      ++ib;
    }
  }
  return std::nullopt;
}

/// Earliest predicted frame where the trajectory meets a fixed static box.
inline std::optional<std::pair<std::int64_t, Vec2>> static_intersection(
    const PredictedTrajectory& traj, const BBox& fixed, double margin) {
  for (const auto& p : traj.points) {
    if (boxes_overlap(p.box, fixed, margin)) {
      const Vec2 mid = (p.box.center() + fixed.center()) * 0.5;
      return std::make_pair(p.frame, mid);
    }
  }
  return std::nullopt;
}

/// Suppresses repeat alerts for a canonical pair within the cooldown window,
/// keyed on the last alert that survived.
class AlertDeduper {
public:
  explicit AlertDeduper(int cooldown) : cooldown_(cooldown) {}

  bool admit(const std::string& id_a, const std::string& id_b,
             std::int64_t emitted_at) {
    const auto key = std::make_pair(id_a, id_b);
    auto it = last_kept_.find(key);
    if (it != last_kept_.end() && emitted_at - it->second < cooldown_) {
      return false;
    }
    last_kept_[key] = emitted_at;
    return true;
  }

private:
  int cooldown_;
  std::map<std::pair<std::string, std::string>, std::int64_t> last_kept_;
};

/// One alert record per line; lead_seconds rounded to 4 decimal places.
inline std::string alert_to_line(const CollisionAlert& a, double fps) {
  nlohmann::json j;
  j["emitted_at"] = a.emitted_at;
  j["id_a"] = a.id_a;
  j["id_b"] = a.id_b;
  j["class_a"] = to_string(a.class_a);
  j["class_b"] = to_string(a.class_b);
  j["predicted_frame"] = a.predicted_collision_frame;
  j["cx"] = a.location.x;
  j["cy"] = a.location.y;
  j["lead_frames"] = a.lead;
  j["lead_seconds"] =
      std::round(static_cast<double>(a.lead) / fps * 1e4) / 1e4;
  return j.dump();
}

inline CollisionAlert alert_from_line(const std::string& line, int line_no = 0) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
    CollisionAlert a;
    a.emitted_at = j.at("emitted_at").get<std::int64_t>();
    a.id_a = j.at("id_a").get<std::string>();
    a.id_b = j.at("id_b").get<std::string>();
    a.class_a = class_from_string(j.at("class_a").get<std::string>());
    a.class_b = class_from_string(j.at("class_b").get<std::string>());
    a.predicted_collision_frame = j.at("predicted_frame").get<std::int64_t>();
    a.location = {j.at("cx").get<double>(), j.at("cy").get<double>()};
    a.lead = j.at("lead_frames").get<std::int64_t>();
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("alert line " + std::to_string(line_no) + ": " + e.what());
  }
}

/// Streaming collision-forecasting engine. Feed one frame of observations at
/// a time; on cadence frames it predicts every eligible moving object's
/// trajectory and emits deduplicated alerts for time-aligned intersections.
class Engine {
public:
  explicit Engine(EngineConfig cfg)
      : cfg_(std::move(cfg)),
        predictor_(make_predictor(cfg_.predictor)),
        ledger_(cfg_.Q),
        deduper_(cfg_.dedup_cooldown) {
    cfg_.validate();
    registry_.P = cfg_.P;
    registry_.Q = cfg_.Q;
  }

  const EngineConfig& config() const { return cfg_; }
  const SceneRegistry& registry() const { return registry_; }
  const PredictionLedger& ledger() const { return ledger_; }

  DeviationSet deviation_set(const std::string& object_id) const {
    return ledger_.deviation_set(object_id, last_frame_);
  }

  std::size_t objects_seen() const { return seen_.size(); }

  /// Processes one frame: matures residuals, updates windows and mobility,
  /// and on cadence frames runs prediction plus the intersection sweep.
  /// Alerts come back in canonical pair order.
  std::vector<CollisionAlert> step(std::int64_t frame,
                                   const std::vector<ObjectState>& observations) {
    if (has_frames_ && frame <= last_frame_) {
      throw OrderingError("step frame " + std::to_string(frame) +
                          " not greater than previous frame " +
                          std::to_string(last_frame_));
    }
    for (const auto& obs : observations) {
      if (obs.frame != frame) {
        throw OrderingError("observation for object '" + obs.object_id +
                            "' carries frame " + std::to_string(obs.frame) +
                            " inside step for frame " + std::to_string(frame));
      }
    }
    for (const auto& obs : observations) {
      ingest_observation(obs);
    }
    has_frames_ = true;
    last_frame_ = frame;

    std::vector<CollisionAlert> alerts;
    if (frame % cfg_.T == 0) {
      alerts = prediction_round(frame);
    }
    return alerts;
  }

private:
  void ingest_observation(const ObjectState& obs) {
    seen_.insert(obs.object_id);
    auto it = registry_.windows.find(obs.object_id);
    if (it != registry_.windows.end() && !it->second.empty() &&
        obs.frame > it->second.last_frame() + cfg_.max_gap + 1) {
      // Gap too long to interpolate: the object re-registers with a fresh
      // window and clean deviation history.
      registry_.windows.erase(it);
      registry_.statics.erase(obs.object_id);
      ledger_.reset_object(obs.object_id);
    }
    ledger_.observe_actual(obs);
    push_observation(registry_, obs);
    auto& window = registry_.windows[obs.object_id];
    if (window.mobility == Mobility::undecided) {
      const Mobility m = classify_mobility(window, cfg_.min_obs, cfg_.eps_move);
      if (m != Mobility::undecided) {
        window.mobility = m;
        if (m == Mobility::statik) {
          registry_.statics[obs.object_id] = window.last().box;
        }
      }
    }
  }

  bool passes_gate(const std::string& id, bool is_static) const {
    if (cfg_.gating == GatingMode::intersect_only) return true;
    if (is_static) return true;  // statics carry no residual history
    const auto flag = anomaly_flag(ledger_.deviation_set(id, last_frame_));
    return !flag.has_value() || *flag;
  }

  void emit(std::vector<CollisionAlert>& out, std::int64_t frame,
            const std::string& id_a, bool static_a, const std::string& id_b,
            bool static_b, ClassLabel class_a, ClassLabel class_b,
            std::int64_t collision_frame, const Vec2& location) {
    bool swap = id_b < id_a;
    const std::string& ca = swap ? id_b : id_a;
    const std::string& cb = swap ? id_a : id_b;
    if (!(passes_gate(id_a, static_a) || passes_gate(id_b, static_b))) return;
    if (!deduper_.admit(ca, cb, frame)) return;
    CollisionAlert alert;
    alert.emitted_at = frame;
    alert.id_a = ca;
    alert.id_b = cb;
    alert.class_a = swap ? class_b : class_a;
    alert.class_b = swap ? class_a : class_b;
    alert.predicted_collision_frame = collision_frame;
    alert.location = location;
    alert.lead = collision_frame - frame;
    out.push_back(alert);
  }

  std::vector<CollisionAlert> prediction_round(std::int64_t frame) {
    std::vector<PredictedTrajectory> round;
    for (const auto& [id, window] : registry_.windows) {
      if (window.mobility != Mobility::moving) continue;
      if (auto traj = predictor_.predict(window, cfg_.Q)) {
        ledger_.record_prediction(*traj);
        round.push_back(std::move(*traj));
      }
    }

    std::vector<CollisionAlert> alerts;
    for (std::size_t i = 0; i < round.size(); ++i) {
      for (std::size_t j = i + 1; j < round.size(); ++j) {
        if (auto hit = pair_intersection(round[i], round[j], cfg_.overlap_margin)) {
          emit(alerts, frame, round[i].object_id, false, round[j].object_id,
               false, class_of(round[i].object_id), class_of(round[j].object_id),
               hit->first, hit->second);
        }
      }
      for (const auto& [sid, box] : registry_.statics) {
        if (auto hit = static_intersection(round[i], box, cfg_.overlap_margin)) {
          emit(alerts, frame, round[i].object_id, false, sid, true,
               class_of(round[i].object_id), class_of(sid), hit->first,
               hit->second);
        }
      }
    }
    std::sort(alerts.begin(), alerts.end(),
              [](const CollisionAlert& a, const CollisionAlert& b) {
                return std::tie(a.id_a, a.id_b) < std::tie(b.id_a, b.id_b);
              });
    return alerts;
  }

  ClassLabel class_of(const std::string& id) const {
    auto it = registry_.windows.find(id);
    return it != registry_.windows.end() && !it->second.empty()
               ? it->second.last().class_label
               : ClassLabel::other;
  }

  EngineConfig cfg_;
  Predictor predictor_;
  SceneRegistry registry_;
  PredictionLedger ledger_;
  AlertDeduper deduper_;
  std::set<std::string> seen_;
  std::int64_t last_frame_ = 0;
  bool has_frames_ = false;
};

}  // namespace collidepred

#endif  // COLLIDEPRED_ENGINE_HPP_
