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

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "collidepred/predictor.hpp"

using namespace collidepred;

namespace {

TrackWindow window_from_centers(const std::vector<Vec2>& centers,
                                std::int64_t first_frame = 0) {
  TrackWindow w;
  w.object_id = "a";
  w.mobility = Mobility::moving;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    w.states.push_back({first_frame + static_cast<std::int64_t>(i), "a",
                        ClassLabel::car,
                        {centers[i].x, centers[i].y, 10.0, 10.0}});
  }
  return w;
}

}  // namespace

TEST_CASE("constant_velocity extrapolates uniform motion") {
  const auto w = window_from_centers({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});
  const auto pred = make_predictor({PredictorSpec::Kind::constant_velocity, 1, 1});
  const auto traj = pred.predict(w, 3);
  REQUIRE(traj);
  REQUIRE(traj->points.size() == 3);
  CHECK(traj->points[0].frame == 5);
  CHECK(traj->points[0].box.cx == Catch::Approx(5.0));
  CHECK(traj->points[1].box.cx == Catch::Approx(6.0));
  CHECK(traj->points[2].box.cx == Catch::Approx(7.0));
  CHECK(traj->points[2].box.cy == Catch::Approx(0.0));
}

TEST_CASE("least_squares degree 1 matches constant_velocity on linear motion") {
  const auto w = window_from_centers({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});
  const auto cv = make_predictor({PredictorSpec::Kind::constant_velocity, 3, 1});
  const auto ls = make_predictor({PredictorSpec::Kind::least_squares, 3, 1});
  const auto a = cv.predict(w, 3);
  const auto b = ls.predict(w, 3);
  REQUIRE(a);
  REQUIRE(b);
  for (int i = 0; i < 3; ++i) {
    CHECK(b->points[i].box.cx == Catch::Approx(a->points[i].box.cx).margin(1e-9));
    CHECK(b->points[i].box.cy == Catch::Approx(a->points[i].box.cy).margin(1e-9));
  }
}

TEST_CASE("least_squares degree 2 is exact on quadratic motion") {
  // cy = t^2 sampled at t = 0..4; direct polynomial evaluation gives the
  // expected future: cy(5) = 25, cy(6) = 36.
  std::vector<Vec2> centers;
  for (int t = 0; t <= 4; ++t) {
    centers.push_back({0.0, static_cast<double>(t * t)});
  }
  const auto w = window_from_centers(centers);
  const auto pred = make_predictor({PredictorSpec::Kind::least_squares, 3, 2});
  const auto traj = pred.predict(w, 2);
  REQUIRE(traj);
  CHECK(traj->points[0].box.cy == Catch::Approx(25.0).margin(1e-9));
  CHECK(traj->points[1].box.cy == Catch::Approx(36.0).margin(1e-9));
}

TEST_CASE("both predictors are exact on noiseless affine motion") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> pos(-500.0, 500.0);
  std::uniform_real_distribution<double> vel(-8.0, 8.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec2 start{pos(rng), pos(rng)};
    const Vec2 v{vel(rng), vel(rng)};
    std::vector<Vec2> centers;
    for (int t = 0; t < 10; ++t) centers.push_back(start + v * t);
    const auto w = window_from_centers(centers);
    for (auto kind : {PredictorSpec::Kind::constant_velocity,
                      PredictorSpec::Kind::least_squares}) {
      const auto pred = make_predictor({kind, 3, 1});
      const auto traj = pred.predict(w, 12);
      REQUIRE(traj);
      for (int q = 1; q <= 12; ++q) {
        const Vec2 truth = start + v * (9.0 + q);
        CHECK(std::abs(traj->points[q - 1].box.cx - truth.x) < 1e-9);
        CHECK(std::abs(traj->points[q - 1].box.cy - truth.y) < 1e-9);
      }
    }
  }
}

TEST_CASE("prediction is translation and scale equivariant") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> pos(-100.0, 100.0);
  std::vector<Vec2> centers;
  for (int t = 0; t < 8; ++t) centers.push_back({pos(rng), pos(rng)});
  const Vec2 shift{123.5, -77.25};
  const double scale = 2.5;
  for (auto kind : {PredictorSpec::Kind::constant_velocity,
                    PredictorSpec::Kind::least_squares}) {
    const auto pred = make_predictor({kind, 3, 2});
    std::vector<Vec2> shifted, scaled;
    for (const auto& c : centers) {
      shifted.push_back(c + shift);
      scaled.push_back(c * scale);
    }
    const auto base = pred.predict(window_from_centers(centers), 6);
    const auto moved = pred.predict(window_from_centers(shifted), 6);
    const auto grown = pred.predict(window_from_centers(scaled), 6);
    REQUIRE(base);
    for (int i = 0; i < 6; ++i) {
      CHECK(moved->points[i].box.cx ==
            Catch::Approx(base->points[i].box.cx + shift.x).margin(1e-7));
      CHECK(moved->points[i].box.cy ==
            Catch::Approx(base->points[i].box.cy + shift.y).margin(1e-7));
      CHECK(grown->points[i].box.cx ==
            Catch::Approx(base->points[i].box.cx * scale).margin(1e-7));
      CHECK(grown->points[i].box.cy ==
            Catch::Approx(base->points[i].box.cy * scale).margin(1e-7));
    }
  }
}

TEST_CASE("output has exactly Q consecutive frames and the last observed extent") {
  auto centers = std::vector<Vec2>{{0, 0}, {3, 1}, {7, 2}, {8, 9}};
  auto w = window_from_centers(centers, 100);
  w.states.back().box.w = 17.0;
  w.states.back().box.h = 13.0;
  const auto pred = make_predictor({PredictorSpec::Kind::constant_velocity, 3, 1});
  const auto traj = pred.predict(w, 9);
  REQUIRE(traj);
  REQUIRE(traj->points.size() == 9);
  CHECK(traj->issued_at == 103);
  for (std::size_t i = 0; i < traj->points.size(); ++i) {
    CHECK(traj->points[i].frame == 104 + static_cast<std::int64_t>(i));
    CHECK(traj->points[i].box.w == 17.0);
    CHECK(traj->points[i].box.h == 13.0);
  }
}

TEST_CASE("insufficient history yields no trajectory") {
  const auto w1 = window_from_centers({{0, 0}});
  const auto cv = make_predictor({PredictorSpec::Kind::constant_velocity, 3, 1});
  CHECK_FALSE(cv.predict(w1, 5).has_value());
  const auto w2 = window_from_centers({{0, 0}, {1, 1}});
  const auto ls2 = make_predictor({PredictorSpec::Kind::least_squares, 3, 2});
  CHECK_FALSE(ls2.predict(w2, 5).has_value());
}

TEST_CASE("make_predictor validates parameters") {
  CHECK_THROWS_AS(make_predictor({PredictorSpec::Kind::constant_velocity, 0, 1}),
                  ConfigError);
  CHECK_THROWS_AS(make_predictor({PredictorSpec::Kind::least_squares, 1, 3}),
                  ConfigError);
}

TEST_CASE("textual predictor specs parse; unknown kinds are rejected") {
  const auto cv = parse_predictor_spec("constant_velocity:k=5");
  CHECK(cv.kind == PredictorSpec::Kind::constant_velocity);
  CHECK(cv.k == 5);
  const auto ls = parse_predictor_spec("least_squares:d=2");
  CHECK(ls.degree == 2);
  CHECK_THROWS_AS(parse_predictor_spec("transformer"), ConfigError);
}
