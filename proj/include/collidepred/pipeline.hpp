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

#ifndef COLLIDEPRED_PIPELINE_HPP_
#define COLLIDEPRED_PIPELINE_HPP_

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "collidepred/config.hpp"
#include "collidepred/engine.hpp"
#include "collidepred/evaluation.hpp"
#include "collidepred/ingest.hpp"
#include "collidepred/simulator.hpp"

namespace collidepred {

struct RunResult {
  std::vector<CollisionAlert> alerts;
  std::int64_t frames_processed = 0;
  std::size_t objects_seen = 0;
  double wall_ms = 0.0;
};

/// Streams a (frame, id)-sorted observation stream through a fresh engine.
/// Gap repair runs first; frames are then fed strictly in order.
inline RunResult run_stream(std::vector<ObjectState> states, const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  states = interpolate_gaps(std::move(states), cfg.engine.max_gap);
  Engine engine(cfg.engine);
  RunResult result;
  for (const auto& group : group_by_frame(states)) {
    auto alerts = engine.step(group.front().frame, group);
    result.alerts.insert(result.alerts.end(), alerts.begin(), alerts.end());
    ++result.frames_processed;
  }
  result.objects_seen = engine.objects_seen();
  result.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return result;
}

inline void write_alerts(const std::string& path,
                         const std::vector<CollisionAlert>& alerts, double fps) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  for (const auto& a : alerts) out << alert_to_line(a, fps) << '\n';
}

inline std::vector<CollisionAlert> load_alerts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<CollisionAlert> alerts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty()) alerts.push_back(alert_from_line(line, line_no));
  }
  return alerts;
}

/// Run summary text: counts, wall time, and the full effective config.
inline std::string render_run_summary(const RunResult& result,
                                      const RunConfig& cfg) {
  std::ostringstream out;
  out << "frames_processed = " << result.frames_processed << "\n"
      << "objects_seen = " << result.objects_seen << "\n"
      << "alerts_emitted = " << result.alerts.size() << "\n"
      << "wall_ms = " << format_fixed(result.wall_ms, 3) << "\n"
      << "# effective configuration\n"
      << config_to_string(cfg);
  return out.str();
}

/// Writes <name>.records.jsonl and <name>.gt.json under out_dir.
/// Returns the records path.
inline std::string simulate_to_files(const ScenarioSpec& spec,
                                     const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto [states, gt] = generate(spec);
  const std::string records = out_dir + "/" + spec.name + ".records.jsonl";
  write_stream(records, states, StreamFormat::records);
  write_ground_truth(out_dir + "/" + spec.name + ".gt.json", gt);
  return records;
}

struct ScenePaths {
  std::string name;
  std::string records;  // may be empty for eval-only scenes
  std::string alerts;
  std::string gt;
};

/// Pairs <name>.gt.json sidecars in a directory with their sibling
/// <name>.records.jsonl / <name>.alerts.jsonl files, sorted by name.
inline std::vector<ScenePaths> discover_scenes(const std::string& dir) {
  std::vector<ScenePaths> scenes;
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("scene directory '" + dir + "' does not exist");
  }
  std::set<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string file = entry.path().filename().string();
    const std::string suffix = ".gt.json";
    if (file.size() > suffix.size() &&
        file.substr(file.size() - suffix.size()) == suffix) {
      names.insert(file.substr(0, file.size() - suffix.size()));
    }
  }
  for (const auto& name : names) {
    ScenePaths p;
    p.name = name;
    p.gt = dir + "/" + name + ".gt.json";
    const std::string records = dir + "/" + name + ".records.jsonl";
    const std::string alerts = dir + "/" + name + ".alerts.jsonl";
    if (std::filesystem::exists(records)) p.records = records;
    if (std::filesystem::exists(alerts)) p.alerts = alerts;
    scenes.push_back(p);
  }
  return scenes;
}

/// Scores pre-computed alert files against their GT sidecars.
inline EvalReport evaluate_scenes(const std::vector<ScenePaths>& scenes,
                                  const RunConfig& cfg) {
  EvalReport report;
  for (const auto& scene : scenes) {
    const GroundTruthEvent gt = load_ground_truth(scene.gt);
    std::vector<CollisionAlert> alerts;
    if (!scene.alerts.empty()) alerts = load_alerts(scene.alerts);
    report.scenes.push_back(match(alerts, gt, cfg.lookahead_frames(), scene.name));
  }
  return report;
}

/// Re-runs the engine over each scene's records with one predictor.
/// Scenes are independent; with `parallel` they run on worker threads and
/// results are joined in scene order, so aggregation stays deterministic.
inline EvalReport run_and_evaluate(const std::vector<ScenePaths>& scenes,
                                   RunConfig cfg, const PredictorSpec& predictor,
                                   bool parallel = false) {
  cfg.engine.predictor = predictor;
  auto score_one = [&cfg](const ScenePaths& scene) {
    const GroundTruthEvent gt = load_ground_truth(scene.gt);
    auto states = load_stream(scene.records, StreamFormat::records);
    const RunResult result = run_stream(std::move(states), cfg);
    return match(result.alerts, gt, cfg.lookahead_frames(), scene.name);
  };
  EvalReport report;
  if (parallel) {
    std::vector<std::future<SceneEval>> futures;
    futures.reserve(scenes.size());
    for (const auto& scene : scenes) {
      futures.push_back(std::async(std::launch::async, score_one, scene));
    }
    for (auto& f : futures) report.scenes.push_back(f.get());
  } else {
    for (const auto& scene : scenes) report.scenes.push_back(score_one(scene));
  }
  return report;
}

/// Same scenes, same engine config, two predictors side by side.
inline CompareReport compare_predictors(const std::vector<ScenePaths>& scenes,
                                        const RunConfig& cfg,
                                        const PredictorSpec& spec_a,
                                        const PredictorSpec& spec_b,
                                        bool parallel = false) {
  CompareReport cmp;
  cmp.label_a = to_string(spec_a.kind);
  cmp.label_b = to_string(spec_b.kind);
  cmp.report_a = run_and_evaluate(scenes, cfg, spec_a, parallel);
  cmp.report_b = run_and_evaluate(scenes, cfg, spec_b, parallel);
  return cmp;
}

}  // namespace collidepred

#endif  // COLLIDEPRED_PIPELINE_HPP_
