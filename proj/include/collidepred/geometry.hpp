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

#ifndef COLLIDEPRED_GEOMETRY_HPP_
#define COLLIDEPRED_GEOMETRY_HPP_

#include <cmath>

#include "collidepred/errors.hpp"

namespace collidepred {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2& o) const = default;

  double norm() const { return std::hypot(x, y); }
};

/// Axis-aligned bounding box in pixel space, center + extent.
struct BBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  bool operator==(const BBox& o) const = default;

  Vec2 center() const { return {cx, cy}; }

  bool valid() const {
    return w > 0.0 && h > 0.0 && std::isfinite(cx) && std::isfinite(cy) &&
           std::isfinite(w) && std::isfinite(h);
  }
};

/// Inclusive separating-axis test: boxes whose edges touch exactly do overlap.
inline bool boxes_overlap(const BBox& a, const BBox& b, double margin) {
  return std::abs(a.cx - b.cx) <= (a.w + b.w) / 2.0 + margin &&
         std::abs(a.cy - b.cy) <= (a.h + b.h) / 2.0 + margin;
}

}  // namespace collidepred

#endif  // COLLIDEPRED_GEOMETRY_HPP_
