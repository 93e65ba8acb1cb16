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

#ifndef COLLIDEPRED_DEVIATION_HPP_
#define COLLIDEPRED_DEVIATION_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "collidepred/geometry.hpp"
#include "collidepred/predictor.hpp"
#include "collidepred/track.hpp"

namespace collidepred {

/// The matured residual distances of one object (the deviation set), newest
/// last, holding at most the engine horizon's worth of entries.
struct DeviationSet {
  std::string object_id;
  std::vector<double> residuals;
  std::int64_t as_of_frame = 0;
};

/// Per-object bookkeeping of outstanding predictions and matured residuals.
/// For each target frame only the newest prediction vintage is retained;
/// once the actual observation for a frame arrives the entry matures into a
/// residual and is dropped.
class PredictionLedger {
public:
  explicit PredictionLedger(int horizon) : horizon_(horizon) {}

  /// Stores each of the trajectory's points under its target frame,
  /// overwriting older vintages.
  void record_prediction(const PredictedTrajectory& traj) {
    auto& entry = objects_[traj.object_id];
    for (const auto& p : traj.points) {
      entry.predicted[p.frame] = p.box.center();
    }
  }

  /// Matches the arrived observation against the retained prediction for its
  /// frame, if any. Returns the Euclidean center residual and retires both
  /// the consumed entry and any prediction that can no longer mature.
  std::optional<double> observe_actual(const ObjectState& actual) {
    auto obj = objects_.find(actual.object_id);
    if (obj == objects_.end()) return std::nullopt;
    auto& entry = obj->second;
    std::optional<double> residual;
    if (auto it = entry.predicted.find(actual.frame); it != entry.predicted.end()) {
      residual = (it->second - actual.box.center()).norm();
      entry.matured.push_back(*residual);
      while (entry.matured.size() > static_cast<std::size_t>(horizon_)) {
        entry.matured.pop_front();
      }
    }
    entry.predicted.erase(entry.predicted.begin(),
                          entry.predicted.upper_bound(actual.frame));
    return residual;
  }

  /// Last up-to-Q matured residuals for the object, oldest first.
  DeviationSet deviation_set(const std::string& object_id,
                             std::int64_t at_frame) const {
    DeviationSet dev;
    dev.object_id = object_id;
    dev.as_of_frame = at_frame;
    if (auto it = objects_.find(object_id); it != objects_.end()) {
      dev.residuals.assign(it->second.matured.begin(), it->second.matured.end());
    }
    return dev;
  }

  std::optional<Vec2> predicted_center(const std::string& object_id,
                                       std::int64_t frame) const {
    auto obj = objects_.find(object_id);
    if (obj == objects_.end()) return std::nullopt;
    auto it = obj->second.predicted.find(frame);
    if (it == obj->second.predicted.end()) return std::nullopt;
    return it->second;
  }

  /// Drops all state for an object (used when a long gap re-registers it).
  void reset_object(const std::string& object_id) { objects_.erase(object_id); }

private:
  struct ObjectLedger {
    std::map<std::int64_t, Vec2> predicted;  // target frame -> center
    std::deque<double> matured;
  };
  std::map<std::string, ObjectLedger> objects_;
  int horizon_;
};

/// Majority-above-mean gate: true iff strictly more than half of the
/// residuals lie strictly above their arithmetic mean. Empty sets carry no
/// signal and yield nullopt.
inline std::optional<bool> anomaly_flag(const DeviationSet& dev) {
  if (dev.residuals.empty()) return std::nullopt;
  double sum = 0.0;
  for (double r : dev.residuals) sum += r;
  const double mean = sum / static_cast<double>(dev.residuals.size());
  std::size_t above = 0;
  for (double r : dev.residuals) {
    if (r > mean) ++above;
  }
  return 2 * above > dev.residuals.size();
}

}  // namespace collidepred

#endif  // COLLIDEPRED_DEVIATION_HPP_
