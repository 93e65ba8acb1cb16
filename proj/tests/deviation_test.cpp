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

#include "collidepred/deviation.hpp"

using namespace collidepred;

namespace {

PredictedTrajectory traj(const std::string& id, std::int64_t issued_at,
                         const std::vector<Vec2>& centers) {
  PredictedTrajectory t;
  t.object_id = id;
  t.issued_at = issued_at;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    t.points.push_back({issued_at + static_cast<std::int64_t>(i) + 1, id,
                        ClassLabel::car,
                        {centers[i].x, centers[i].y, 10.0, 10.0}});
  }
  return t;
}

ObjectState actual(const std::string& id, std::int64_t frame, double cx, double cy) {
  return {frame, id, ClassLabel::car, {cx, cy, 10.0, 10.0}};
}

}  // namespace

TEST_CASE("record_prediction stores one entry per target frame") {
  PredictionLedger ledger(3);
  ledger.record_prediction(traj("a", 5, {{1, 0}, {2, 0}, {3, 0}}));
  CHECK(ledger.predicted_center("a", 6).has_value());
  CHECK(ledger.predicted_center("a", 7).has_value());
  CHECK(ledger.predicted_center("a", 8).has_value());
  CHECK_FALSE(ledger.predicted_center("a", 9).has_value());
}

TEST_CASE("newer vintages overwrite overlapping target frames") {
  PredictionLedger ledger(3);
  ledger.record_prediction(traj("a", 5, {{1, 0}, {2, 0}, {3, 0}}));
  ledger.record_prediction(traj("a", 7, {{100, 0}, {101, 0}, {102, 0}}));
  const auto c = ledger.predicted_center("a", 8);
  REQUIRE(c);
  CHECK(c->x == 100.0);
}

TEST_CASE("residual is the Euclidean distance between predicted and actual centers") {
  PredictionLedger ledger(5);
  ledger.record_prediction(traj("a", 5, {{5, 0}}));
  SECTION("identical centers") {
    const auto r = ledger.observe_actual(actual("a", 6, 5, 0));
    REQUIRE(r);
    CHECK(*r == 0.0);
  }
  SECTION("3-4-5 triangle") {
    const auto r = ledger.observe_actual(actual("a", 6, 8, 4));
    REQUIRE(r);
    CHECK(*r == Catch::Approx(5.0));
  }
}

TEST_CASE("no residual without a retained prediction for the frame") {
  PredictionLedger ledger(5);
  ledger.record_prediction(traj("a", 5, {{5, 0}}));
  CHECK_FALSE(ledger.observe_actual(actual("a", 9, 0, 0)).has_value());
  CHECK_FALSE(ledger.observe_actual(actual("b", 6, 0, 0)).has_value());
}

TEST_CASE("deviation set keeps only the last Q matured residuals") {
  PredictionLedger ledger(3);
  for (std::int64_t f = 1; f <= 6; ++f) {
    ledger.record_prediction(traj("a", f, {{static_cast<double>(f), 0}}));
    ledger.observe_actual(actual("a", f + 1, static_cast<double>(f) + f, 0));
  }
  const auto dev = ledger.deviation_set("a", 7);
  REQUIRE(dev.residuals.size() == 3);
  CHECK(dev.residuals == std::vector<double>{4.0, 5.0, 6.0});
}

TEST_CASE("anomaly_flag examples") {
  CHECK(anomaly_flag({"a", {0, 0, 0}, 0}) == false);
  CHECK(anomaly_flag({"a", {3, 3, 3, 1}, 0}) == true);
  CHECK(anomaly_flag({"a", {1, 1, 10}, 0}) == false);
  CHECK_FALSE(anomaly_flag({"a", {}, 0}).has_value());
}

TEST_CASE("anomaly_flag is false on any constant residual set") {
  for (double v : {0.0, 0.5, 7.25}) {
    for (int n = 1; n <= 8; ++n) {
      CHECK(anomaly_flag({"a", std::vector<double>(n, v), 0}) == false);
    }
  }
}

TEST_CASE("anomaly_flag is invariant under positive scaling") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> mag(0.0, 50.0);
  for (int trial = 0; trial < 100; ++trial) {
    DeviationSet dev{"a", {}, 0};
    const int n = 2 + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) dev.residuals.push_back(mag(rng));
    const auto base = anomaly_flag(dev);
    for (double s : {0.5, 2.0, 10.0}) {
      DeviationSet scaled = dev;
      for (auto& r : scaled.residuals) r *= s;
      CHECK(anomaly_flag(scaled) == base);
    }
  }
}

TEST_CASE("residuals are invariant under joint translation") {
  const Vec2 shift{250.0, -40.0};
  PredictionLedger a(5), b(5);
  a.record_prediction(traj("x", 1, {{10, 10}, {20, 10}}));
  b.record_prediction(traj("x", 1, {{10 + shift.x, 10 + shift.y},
                                    {20 + shift.x, 10 + shift.y}}));
  const auto ra = a.observe_actual(actual("x", 2, 13, 14));
  const auto rb = b.observe_actual(actual("x", 2, 13 + shift.x, 14 + shift.y));
  REQUIRE(ra);
  REQUIRE(rb);
  CHECK(*ra == Catch::Approx(*rb));
}

TEST_CASE("noiseless affine motion yields all-zero residuals and no flag") {
  // predictions from exact linear extrapolation against the same true path
  PredictionLedger ledger(10);
  const Vec2 start{50, 80};
  const Vec2 v{3, -2};
  for (std::int64_t f = 5; f <= 30; ++f) {
    std::vector<Vec2> future;
    for (int q = 1; q <= 5; ++q) future.push_back(start + v * double(f + q));
    ledger.record_prediction(traj("a", f, future));
    const Vec2 c = start + v * double(f + 1);
    const auto r = ledger.observe_actual(actual("a", f + 1, c.x, c.y));
    if (r) CHECK(*r <= 1e-9);
  }
  const auto flag = anomaly_flag(ledger.deviation_set("a", 31));
  REQUIRE(flag.has_value());
  CHECK(*flag == false);
}
