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

#ifndef COLLIDEPRED_PREDICTOR_HPP_
#define COLLIDEPRED_PREDICTOR_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collidepred/errors.hpp"
#include "collidepred/track.hpp"

namespace collidepred {

/// Selects and parameterizes a trajectory predictor.
struct PredictorSpec {
  enum class Kind { constant_velocity, least_squares };
  Kind kind = Kind::constant_velocity;
  int k = 3;       // velocity-averaging span (constant_velocity)
  int degree = 1;  // polynomial degree, 1 or 2 (least_squares)

  bool operator==(const PredictorSpec& o) const = default;
};

inline std::string to_string(PredictorSpec::Kind kind) {
  return kind == PredictorSpec::Kind::constant_velocity ? "constant_velocity"
                                                        : "least_squares";
}

/// Parses "constant_velocity", "constant_velocity:k=3", "least_squares:d=2".
inline PredictorSpec parse_predictor_spec(const std::string& text) {
  PredictorSpec spec;
  std::string kind = text;
  std::string params;
  if (auto pos = text.find(':'); pos != std::string::npos) {
    kind = text.substr(0, pos);
    params = text.substr(pos + 1);
  }
  if (kind == "constant_velocity") {
    spec.kind = PredictorSpec::Kind::constant_velocity;
  } else if (kind == "least_squares") {
    spec.kind = PredictorSpec::Kind::least_squares;
  } else {
    throw ConfigError("unknown predictor kind '" + kind + "'");
  }
  if (!params.empty()) {
    auto eq = params.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("malformed predictor params '" + params + "'");
    }
    const std::string key = params.substr(0, eq);
    const int value = std::stoi(params.substr(eq + 1));
    if (key == "k") {
      spec.k = value;
    } else if (key == "d") {
      spec.degree = value;
    } else {
      throw ConfigError("unknown predictor param '" + key + "'");
    }
  }
  return spec;
}

/// Exactly Q predicted positions for frames issued_at+1 .. issued_at+Q.
/// Boxes carry the last observed (w, h).
struct PredictedTrajectory {
  std::string object_id;
  std::int64_t issued_at = 0;
  std::vector<ObjectState> points;
};

namespace detail {

/// Ordinary least squares fit of y against t for degree 1 or 2, via normal
/// equations with Gaussian elimination. t values are window-relative and
/// small, so this is well conditioned.
inline std::array<double, 3> polyfit(const std::vector<double>& t,
                                     const std::vector<double>& y, int degree) {
  const int n = degree + 1;
  double a[3][4] = {};
  for (std::size_t i = 0; i < t.size(); ++i) {
    double powers[5] = {1, 0, 0, 0, 0};
    for (int p = 1; p <= 2 * degree; ++p) powers[p] = powers[p - 1] * t[i];
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) a[r][c] += powers[r + c];
      a[r][n] += powers[r] * y[i];
    }
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    for (int c = 0; c <= n; ++c) std::swap(a[col][c], a[pivot][c]);
    for (int r = 0; r < n; ++r) {
      if (r == col || a[col][col] == 0.0) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::array<double, 3> coeff = {0, 0, 0};
  for (int r = 0; r < n; ++r) {
    coeff[r] = a[r][r] != 0.0 ? a[r][n] / a[r][r] : 0.0;
  }
  return coeff;
}

}  // namespace detail

/// Stateless predictor handle; equal specs behave identically.
class Predictor {
public:
  explicit Predictor(PredictorSpec spec) : spec_(spec) {}

  const PredictorSpec& spec() const { return spec_; }

  int min_history() const {
    return spec_.kind == PredictorSpec::Kind::constant_velocity
               ? 2
               : spec_.degree + 1;
  }

  /// Extrapolates Q consecutive future positions from the window's history.
  /// Returns nullopt when the window is too short (caller skips the object
  /// this round).
  std::optional<PredictedTrajectory> predict(const TrackWindow& window,
                                             int horizon) const {
    if (window.states.size() < static_cast<std::size_t>(min_history())) {
      return std::nullopt;
    }
    const ObjectState& last = window.last();
    PredictedTrajectory traj;
    traj.object_id = window.object_id;
    traj.issued_at = last.frame;
    traj.points.reserve(horizon);

    if (spec_.kind == PredictorSpec::Kind::constant_velocity) {
      // Mean per-frame velocity over the last k displacement vectors.
      const int avail = static_cast<int>(window.states.size()) - 1;
      const int span = std::min(spec_.k, avail);
      Vec2 vel{0, 0};
      for (int i = 0; i < span; ++i) {
        const auto& b = window.states[window.states.size() - 1 - i];
        const auto& a = window.states[window.states.size() - 2 - i];
        const double dt = static_cast<double>(b.frame - a.frame);
        const Vec2 d = b.box.center() - a.box.center();
        vel = vel + Vec2{d.x / dt, d.y / dt};
      }
      vel = {vel.x / span, vel.y / span};
      for (int q = 1; q <= horizon; ++q) {
        ObjectState p = last;
        p.frame = last.frame + q;
        p.box.cx = last.box.cx + vel.x * q;
        p.box.cy = last.box.cy + vel.y * q;
        traj.points.push_back(p);
      }
    } else {
      // Independent OLS fits of cx and cy against window-relative frame
      // index, evaluated at t = 1..Q past the last observation.
      std::vector<double> t, xs, ys;
      t.reserve(window.states.size());
      for (const auto& s : window.states) {
        t.push_back(static_cast<double>(s.frame - last.frame));
        xs.push_back(s.box.cx);
        ys.push_back(s.box.cy);
      }
      const auto cx = detail::polyfit(t, xs, spec_.degree);
      const auto cy = detail::polyfit(t, ys, spec_.degree);
      for (int q = 1; q <= horizon; ++q) {
        const double tq = static_cast<double>(q);
        ObjectState p = last;
        p.frame = last.frame + q;
        p.box.cx = cx[0] + cx[1] * tq + cx[2] * tq * tq;
        p.box.cy = cy[0] + cy[1] * tq + cy[2] * tq * tq;
        traj.points.push_back(p);
      }
    }
    return traj;
  }

private:
  PredictorSpec spec_;
};

/// Validates the spec and returns a handle. Kind validation happens in
/// parse_predictor_spec for textual specs.
inline Predictor make_predictor(const PredictorSpec& spec) {
  if (spec.k < 1) {
    throw ConfigError("predictor k must be >= 1, got " + std::to_string(spec.k));
  }
  if (spec.degree != 1 && spec.degree != 2) {
    throw ConfigError("predictor degree must be 1 or 2, got " +
                      std::to_string(spec.degree));
  }
  return Predictor(spec);
}

}  // namespace collidepred

#endif  // COLLIDEPRED_PREDICTOR_HPP_
