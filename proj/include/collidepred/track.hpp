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

#ifndef COLLIDEPRED_TRACK_HPP_
#define COLLIDEPRED_TRACK_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "collidepred/errors.hpp"
#include "collidepred/geometry.hpp"

namespace collidepred {

enum class ClassLabel { car, bus, pedestrian, other };

inline std::string to_string(ClassLabel c) {
  switch (c) {
    case ClassLabel::car: return "car";
    case ClassLabel::bus: return "bus";
    case ClassLabel::pedestrian: return "pedestrian";
    default: return "other";
  }
}

/// Unknown class names map to `other`.
inline ClassLabel class_from_string(const std::string& s) {
  if (s == "car") return ClassLabel::car;
  if (s == "bus") return ClassLabel::bus;
  if (s == "pedestrian") return ClassLabel::pedestrian;
  return ClassLabel::other;
}

/// One object's observed bounding box at one frame.
struct ObjectState {
  std::int64_t frame = 0;
  std::string object_id;
  ClassLabel class_label = ClassLabel::other;
  BBox box;

  bool operator==(const ObjectState& o) const = default;
};

enum class Mobility { undecided, moving, statik };

/// Sliding history of the last <= P observations of one object.
struct TrackWindow {
  std::string object_id;
  std::vector<ObjectState> states;  // sorted strictly by frame
  Mobility mobility = Mobility::undecided;

  bool empty() const { return states.empty(); }
  std::int64_t last_frame() const { return states.back().frame; }
  const ObjectState& last() const { return states.back(); }
};

/// All per-object windows for one stream plus the fixed boxes of objects
/// classified static. P/Q live here so window maintenance and prediction
/// agree on horizons.
struct SceneRegistry {
  std::map<std::string, TrackWindow> windows;
  std::map<std::string, BBox> statics;
  int P = 10;
  int Q = 20;
};

/// Appends one observation to its object's window, evicting the oldest state
/// once the window holds P. A re-push at the newest frame replaces it
/// (last-writer-wins); an older frame is an ordering error. Unknown ids open
/// a fresh window with mobility undecided.
inline void push_observation(SceneRegistry& registry, const ObjectState& obs) {
  auto& window = registry.windows[obs.object_id];
  if (window.states.empty()) {
    window.object_id = obs.object_id;
  } else {
    const std::int64_t last = window.last_frame();
    if (obs.frame < last) {
      throw OrderingError("out-of-order observation for object '" +
                          obs.object_id + "': frame " +
                          std::to_string(obs.frame) + " after frame " +
                          std::to_string(last));
    }
    if (obs.frame == last) {
      window.states.back() = obs;
      return;
    }
  }
  window.states.push_back(obs);
  if (window.states.size() > static_cast<std::size_t>(registry.P)) {
    window.states.erase(window.states.begin());
  }
}

/// Displacement-based moving/static split. Undecided until min_obs states
/// have been seen; then static if no center ever strayed more than eps_move
/// from the first, moving otherwise. The decision is sticky: once a window
/// carries a verdict it is returned unchanged.
inline Mobility classify_mobility(const TrackWindow& window, int min_obs,
                                  double eps_move) {
  if (window.mobility != Mobility::undecided) return window.mobility;
  if (window.states.size() < static_cast<std::size_t>(min_obs)) {
    return Mobility::undecided;
  }
  const Vec2 origin = window.states.front().box.center();
  double max_disp = 0.0;
  for (const auto& s : window.states) {
    max_disp = std::max(max_disp, (s.box.center() - origin).norm());
  }
  return max_disp < eps_move ? Mobility::statik : Mobility::moving;
}

}  // namespace collidepred

#endif  // COLLIDEPRED_TRACK_HPP_
