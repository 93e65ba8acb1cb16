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

#ifndef COLLIDEPRED_SIMULATOR_HPP_
#define COLLIDEPRED_SIMULATOR_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "collidepred/errors.hpp"
#include "collidepred/geometry.hpp"
#include "collidepred/ingest.hpp"
#include "collidepred/track.hpp"

namespace collidepred {

enum class ScenarioKind {
  crossing,
  parallel_near_miss,
  sudden_turn,
  pedestrian_cross,
  rear_end
};

inline std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::crossing: return "crossing";
    case ScenarioKind::parallel_near_miss: return "parallel_near_miss";
    case ScenarioKind::sudden_turn: return "sudden_turn";
    case ScenarioKind::pedestrian_cross: return "pedestrian_cross";
    default: return "rear_end";
  }
}

inline ScenarioKind scenario_kind_from_string(const std::string& s) {
  if (s == "crossing") return ScenarioKind::crossing;
  if (s == "parallel_near_miss") return ScenarioKind::parallel_near_miss;
  if (s == "sudden_turn") return ScenarioKind::sudden_turn;
  if (s == "pedestrian_cross") return ScenarioKind::pedestrian_cross;
  if (s == "rear_end") return ScenarioKind::rear_end;
  throw ConfigError("unknown scenario kind '" + s + "'");
}

/// One scripted object: piecewise-constant-velocity path starting at `start`
/// on frame 1, optionally switching to `turn_vel` after `turn_frame`.
struct ObjectScript {
  std::string id;
  ClassLabel class_label = ClassLabel::car;
  Vec2 start;
  Vec2 vel;          // px/frame
  double w = 20.0;
  double h = 20.0;
  std::optional<std::int64_t> turn_frame;
  Vec2 turn_vel;
};

struct ScenarioSpec {
  std::string name = "scene";
  ScenarioKind kind = ScenarioKind::crossing;
  std::int64_t duration = 120;
  double fps = 30.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 1;
  std::vector<ObjectScript> objects;
};

/// First frame of actual (noiseless) box overlap, or none for non-collision
/// scenes.
struct GroundTruthEvent {
  std::optional<std::int64_t> collision_frame;
  std::optional<std::pair<std::string, std::string>> pair;  // canonical
  ScenarioKind kind = ScenarioKind::crossing;
  double fps = 30.0;
  std::uint64_t seed = 0;
};

/// Noiseless position of a scripted object at a 1-based frame index.
inline Vec2 true_center(const ObjectScript& obj, std::int64_t frame) {
  if (obj.turn_frame && frame > *obj.turn_frame) {
    const Vec2 at_turn = obj.start + obj.vel * static_cast<double>(*obj.turn_frame - 1);
    return at_turn + obj.turn_vel * static_cast<double>(frame - *obj.turn_frame);
  }
  return obj.start + obj.vel * static_cast<double>(frame - 1);
}

inline BBox true_box(const ObjectScript& obj, std::int64_t frame) {
  const Vec2 c = true_center(obj, frame);
  return {c.x, c.y, obj.w, obj.h};
}

/// Exact first-overlap scan over the noiseless paths, margin 0, using the
/// same overlap predicate as the engine.
inline GroundTruthEvent scan_ground_truth(const ScenarioSpec& spec) {
  GroundTruthEvent gt;
  gt.kind = spec.kind;
  gt.fps = spec.fps;
  gt.seed = spec.seed;
  for (std::int64_t f = 1; f <= spec.duration && !gt.collision_frame; ++f) {
    for (std::size_t i = 0; i < spec.objects.size(); ++i) {
      for (std::size_t j = i + 1; j < spec.objects.size(); ++j) {
        if (boxes_overlap(true_box(spec.objects[i], f),
                          true_box(spec.objects[j], f), 0.0)) {
          gt.collision_frame = f;
          const std::string& a = spec.objects[i].id;
          const std::string& b = spec.objects[j].id;
          gt.pair = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
          break;
        }
      }
      if (gt.collision_frame) break;
    }
  }
  return gt;
}

inline void validate_scenario(const ScenarioSpec& spec) {
  if (spec.duration < 1) throw ConfigError("duration must be >= 1");
  if (spec.noise_sigma < 0.0) throw ConfigError("noise_sigma must be >= 0");
  if (!(spec.fps > 0.0)) throw ConfigError("fps must be > 0");
  for (const auto& obj : spec.objects) {
    if (!(obj.w > 0.0 && obj.h > 0.0)) {
      throw ConfigError("object '" + obj.id + "': box extent must be positive");
    }
    if (obj.turn_frame && (*obj.turn_frame < 1 || *obj.turn_frame > spec.duration)) {
      throw ConfigError("object '" + obj.id + "': turn_frame " +
                        std::to_string(*obj.turn_frame) +
                        " outside duration " + std::to_string(spec.duration));
    }
  }
  const GroundTruthEvent gt = scan_ground_truth(spec);
  const bool wants_collision = spec.kind != ScenarioKind::parallel_near_miss;
  if (wants_collision && !gt.collision_frame) {
    throw ConfigError("scenario kind '" + to_string(spec.kind) +
                      "' requires a collision but the noiseless paths never overlap");
  }
  if (!wants_collision && gt.collision_frame) {
    throw ConfigError("scenario kind 'parallel_near_miss' must not collide but "
                      "paths overlap at frame " +
                      std::to_string(*gt.collision_frame));
  }
}

/// Deterministic scene generation: noise perturbs emitted observations only,
/// never the ground truth. Records come back ordered by (frame, id).
inline std::pair<std::vector<ObjectState>, GroundTruthEvent> generate(
    const ScenarioSpec& spec) {
  validate_scenario(spec);
  const GroundTruthEvent gt = scan_ground_truth(spec);

  std::vector<ObjectScript> ordered = spec.objects;
  std::sort(ordered.begin(), ordered.end(),
            [](const ObjectScript& a, const ObjectScript& b) { return a.id < b.id; });

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  std::vector<ObjectState> states;
  states.reserve(ordered.size() * static_cast<std::size_t>(spec.duration));
  for (std::int64_t f = 1; f <= spec.duration; ++f) {
    for (const auto& obj : ordered) {
      BBox box = true_box(obj, f);
      if (spec.noise_sigma > 0.0) {
        box.cx += noise(rng) * spec.noise_sigma;
        box.cy += noise(rng) * spec.noise_sigma;
      }
      states.push_back({f, obj.id, obj.class_label, box});
    }
  }
  return {std::move(states), gt};
}

// --- JSON spec / sidecar serialization ---------------------------------

inline ScenarioSpec scenario_from_json(const nlohmann::json& j) {
  ScenarioSpec spec;
  try {
    spec.name = j.value("name", std::string("scene"));
    spec.kind = scenario_kind_from_string(j.at("kind").get<std::string>());
    spec.duration = j.at("duration").get<std::int64_t>();
    spec.fps = j.value("fps", 30.0);
    spec.noise_sigma = j.value("noise_sigma", 0.0);
    spec.seed = j.value("seed", std::uint64_t{1});
    for (const auto& o : j.at("objects")) {
      ObjectScript obj;
      obj.id = o.at("id").get<std::string>();
      obj.class_label = class_from_string(o.value("class", std::string("car")));
      obj.start = {o.at("start").at(0).get<double>(), o.at("start").at(1).get<double>()};
      obj.vel = {o.at("vel").at(0).get<double>(), o.at("vel").at(1).get<double>()};
      obj.w = o.value("w", 20.0);
      obj.h = o.value("h", 20.0);
      if (o.contains("turn_frame")) {
        obj.turn_frame = o.at("turn_frame").get<std::int64_t>();
        obj.turn_vel = {o.at("turn_vel").at(0).get<double>(),
                        o.at("turn_vel").at(1).get<double>()};
      }
      spec.objects.push_back(obj);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("scenario spec: ") + e.what());
  }
  return spec;
}

inline ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("scenario spec '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

inline nlohmann::json ground_truth_to_json(const GroundTruthEvent& gt) {
  nlohmann::json j;
  j["kind"] = to_string(gt.kind);
  j["fps"] = gt.fps;
  j["seed"] = gt.seed;
  if (gt.collision_frame) {
    j["collision_frame"] = *gt.collision_frame;
    j["pair"] = {gt.pair->first, gt.pair->second};
  } else {
    j["collision_frame"] = nullptr;
    j["pair"] = nullptr;
  }
  return j;
}

inline void write_ground_truth(const std::string& path, const GroundTruthEvent& gt) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << ground_truth_to_json(gt).dump(2) << '\n';
}

inline GroundTruthEvent load_ground_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
    GroundTruthEvent gt;
    gt.kind = scenario_kind_from_string(j.at("kind").get<std::string>());
    gt.fps = j.at("fps").get<double>();
    gt.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("collision_frame").is_null()) {
      gt.collision_frame = j.at("collision_frame").get<std::int64_t>();
      gt.pair = std::make_pair(j.at("pair").at(0).get<std::string>(),
                               j.at("pair").at(1).get<std::string>());
    }
    return gt;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("ground truth '" + path + "': " + e.what());
  }
}

}  // namespace collidepred

#endif  // COLLIDEPRED_SIMULATOR_HPP_
