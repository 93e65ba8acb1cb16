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

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "collidepred/ingest.hpp"

using namespace collidepred;

namespace {

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("parse_mot converts left-top to center") {
  const TrackRecord r = parse_mot("1,3,100,50,20,40,1,-1,-1,-1", 1);
  CHECK(r.frame == 1);
  CHECK(r.object_id == "3");
  const ObjectState s = r.to_state();
  CHECK(s.box.cx == 110.0);
  CHECK(s.box.cy == 70.0);
  CHECK(s.box.w == 20.0);
  CHECK(s.box.h == 40.0);
  CHECK(s.class_label == ClassLabel::other);
}

TEST_CASE("parse_mot rejects non-positive extents") {
  CHECK_THROWS_AS(parse_mot("1,3,100,50,0,40,1,-1,-1,-1", 4), ParseError);
}

TEST_CASE("parse_mot reports the line for malformed input") {
  try {
    parse_mot("garbage", 17);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("17") != std::string::npos);
  }
}

TEST_CASE("parse_record_line maps known classes") {
  const auto r = parse_record_line(
      R"({"frame":2,"id":"a","class":"car","cx":10,"cy":20,"w":4,"h":4})");
  CHECK(r.class_label == ClassLabel::car);
  CHECK(r.to_state().box.cx == 10.0);
}

TEST_CASE("parse_record_line falls back to other for unknown classes") {
  const auto r = parse_record_line(
      R"({"frame":2,"id":"a","class":"bicycle","cx":10,"cy":20,"w":4,"h":4})");
  CHECK(r.class_label == ClassLabel::other);
}

TEST_CASE("parse_record_line names the missing key") {
  try {
    parse_record_line(R"({"frame":2,"id":"a","class":"car","cx":10,"w":4,"h":4})", 3);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("cy") != std::string::npos);
  }
}

TEST_CASE("parse_record_line ignores unknown keys") {
  const auto r = parse_record_line(
      R"({"frame":2,"id":"a","class":"car","cx":10,"cy":20,"w":4,"h":4,"score":0.9})");
  CHECK(r.frame == 2);
}

TEST_CASE("load_stream groups and orders by (frame, id)") {
  const std::string path = temp_file("ingest_order.records.jsonl");
  std::vector<ObjectState> stream;
  for (std::int64_t f : {5, 3, 4}) {
    stream.push_back({f, "b", ClassLabel::car, {10, 10, 4, 4}});
    stream.push_back({f, "a", ClassLabel::car, {20, 20, 4, 4}});
  }
  write_stream(path, stream, StreamFormat::records);
  const auto loaded = load_stream(path, StreamFormat::records);
  REQUIRE(loaded.size() == 6);
  CHECK(loaded[0].frame == 3);
  CHECK(loaded[0].object_id == "a");
  CHECK(loaded[1].object_id == "b");
  CHECK(loaded.back().frame == 5);
  const auto groups = group_by_frame(loaded);
  REQUIRE(groups.size() == 3);
  CHECK(groups[0].front().frame == 3);
  CHECK(groups[2].front().frame == 5);
}

TEST_CASE("load_stream on an empty file yields an empty sequence") {
  const std::string path = temp_file("ingest_empty.records.jsonl");
  { std::ofstream out(path); }
  CHECK(load_stream(path, StreamFormat::records).empty());
}

TEST_CASE("round-trip is field-exact for both formats") {
  std::mt19937 rng(23);
  // pixel-like coordinates: multiples of 0.25 survive center/corner conversion
  auto coord = [&rng] { return static_cast<double>(rng() % 16384) * 0.25; };
  std::vector<ObjectState> stream;
  for (int f = 1; f <= 20; ++f) {
    for (const char* id : {"1", "2", "3"}) {
      stream.push_back({f, id, ClassLabel::other,
                        {coord(), coord(), coord() + 0.25, coord() + 0.25}});
    }
  }
  sort_stream(stream);
  for (StreamFormat fmt : {StreamFormat::mot, StreamFormat::records}) {
    const std::string path = temp_file("ingest_roundtrip");
    write_stream(path, stream, fmt);
    const auto loaded = load_stream(path, fmt);
    REQUIRE(loaded.size() == stream.size());
    for (std::size_t i = 0; i < stream.size(); ++i) {
      CAPTURE(i);
      CHECK(loaded[i].frame == stream[i].frame);
      CHECK(loaded[i].object_id == stream[i].object_id);
      CHECK(loaded[i].box == stream[i].box);
    }
  }
}

TEST_CASE("interpolate_gaps fills short gaps linearly") {
  std::vector<ObjectState> stream = {
      {1, "a", ClassLabel::car, {0, 0, 4, 4}},
      {4, "a", ClassLabel::car, {9, 0, 4, 4}},
  };
  const auto filled = interpolate_gaps(stream, 3);
  REQUIRE(filled.size() == 4);
  CHECK(filled[1].frame == 2);
  CHECK(filled[1].box.cx == Catch::Approx(3.0));
  CHECK(filled[2].frame == 3);
  CHECK(filled[2].box.cx == Catch::Approx(6.0));
}

TEST_CASE("interpolate_gaps leaves long gaps open") {
  std::vector<ObjectState> stream = {
      {1, "a", ClassLabel::car, {0, 0, 4, 4}},
      {12, "a", ClassLabel::car, {9, 0, 4, 4}},
  };
  CHECK(interpolate_gaps(stream, 3).size() == 2);
}

TEST_CASE("interpolate_gaps is the identity on gap-free streams and idempotent") {
  std::mt19937 rng(5);
  std::vector<ObjectState> stream;
  std::int64_t fa = 1, fb = 1;
  for (int i = 0; i < 30; ++i) {
    fa += 1 + static_cast<std::int64_t>(rng() % 4);
    fb += 1;
    stream.push_back({fa, "a", ClassLabel::car,
                      {static_cast<double>(rng() % 500), 0, 4, 4}});
    stream.push_back({fb, "b", ClassLabel::car,
                      {0, static_cast<double>(rng() % 500), 4, 4}});
  }
  sort_stream(stream);
  const auto once = interpolate_gaps(stream, 5);
  const auto twice = interpolate_gaps(once, 5);
  CHECK(once == twice);
  CHECK(interpolate_gaps(interpolate_gaps(stream, 0), 0) == stream);
}
