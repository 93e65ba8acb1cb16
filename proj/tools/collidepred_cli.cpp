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

// Command-line front end: run, simulate, eval, compare.

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "collidepred/config.hpp"
#include "collidepred/pipeline.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitParse = 2;
constexpr int kExitIo = 3;

std::string stem_of(const std::string& path) {
  std::string name = std::filesystem::path(path).filename().string();
  // strip a full ".records.jsonl"-style suffix, not just the last extension
  const auto dot = name.find('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw collidepred::IoError("cannot write '" + path + "'");
  out << text;
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::string gating;
  std::string predictor;
  bool parallel = false;
};

collidepred::RunConfig effective_config(const CommonOpts& opts) {
  collidepred::RunConfig cfg;
  if (!opts.config_path.empty()) cfg = collidepred::load_config(opts.config_path);
  if (!opts.gating.empty()) {
    cfg.engine.gating = collidepred::gating_from_string(opts.gating);
  }
  if (!opts.predictor.empty()) {
    cfg.engine.predictor = collidepred::parse_predictor_spec(opts.predictor);
  }
  cfg.engine.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace collidepred;

  CLI::App app{"collide-pred: streaming collision forecasting"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::vector<std::string> inputs;
  std::string format = "records";
  std::string spec_path;
  std::string scenes_dir;
  std::string predictor_a = "constant_velocity";
  std::string predictor_b = "least_squares:d=2";
  std::int64_t seed = -1;

  auto* run = app.add_subcommand("run", "stream a track file through the engine");
  run->add_option("--input", inputs, "track file(s)")->required();
  run->add_option("--format", format, "input format: mot or records");
  run->add_option("--config", opts.config_path, "config file");
  run->add_option("--out", opts.out_dir, "output directory");
  run->add_option("--gating", opts.gating, "intersect_only or deviation_gated");
  run->add_option("--predictor", opts.predictor, "predictor spec override");
  run->add_flag("--parallel", opts.parallel, "process inputs in parallel");

  auto* simulate = app.add_subcommand("simulate", "generate a synthetic scene");
  simulate->add_option("--spec", spec_path, "scenario spec (JSON)")->required();
  simulate->add_option("--out", opts.out_dir, "output directory");
  simulate->add_option("--seed", seed, "override spec seed");

  auto* eval = app.add_subcommand("eval", "score alert files against GT sidecars");
  eval->add_option("--scenes", scenes_dir, "directory of *.alerts.jsonl + *.gt.json")
      ->required();
  eval->add_option("--config", opts.config_path, "config file");
  eval->add_option("--out", opts.out_dir, "output directory");

  auto* compare = app.add_subcommand("compare",
                                     "run two predictors over the same scenes");
  compare->add_option("--scenes", scenes_dir,
                      "directory of *.records.jsonl + *.gt.json")->required();
  compare->add_option("--config", opts.config_path, "config file");
  compare->add_option("--predictor-a", predictor_a, "first predictor spec");
  compare->add_option("--predictor-b", predictor_b, "second predictor spec");
  compare->add_option("--out", opts.out_dir, "output directory");
  compare->add_option("--gating", opts.gating, "gating mode override");
  compare->add_flag("--parallel", opts.parallel, "run scenes in parallel");

  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(opts.out_dir);

    if (run->parsed()) {
      const RunConfig cfg = effective_config(opts);
      const StreamFormat fmt = format_from_string(format);
      auto run_one = [&](const std::string& input) {
        auto states = load_stream(input, fmt);
        const RunResult result = run_stream(std::move(states), cfg);
        const std::string stem = opts.out_dir + "/" + stem_of(input);
        write_alerts(stem + ".alerts.jsonl", result.alerts, cfg.engine.fps);
        write_text(stem + ".summary.txt", render_run_summary(result, cfg));
        return result;
      };
      std::vector<RunResult> results(inputs.size());
      if (opts.parallel) {
        std::vector<std::future<RunResult>> futures;
        for (const auto& input : inputs) {
          futures.push_back(std::async(std::launch::async, run_one, input));
        }
        for (std::size_t i = 0; i < futures.size(); ++i) results[i] = futures[i].get();
      } else {
        for (std::size_t i = 0; i < inputs.size(); ++i) results[i] = run_one(inputs[i]);
      }
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        std::cout << inputs[i] << ": " << results[i].frames_processed
                  << " frames, " << results[i].objects_seen << " objects, "
                  << results[i].alerts.size() << " alerts, "
                  << format_fixed(results[i].wall_ms, 1) << " ms\n";
      }
    } else if (simulate->parsed()) {
      ScenarioSpec spec = load_scenario(spec_path);
      if (seed >= 0) spec.seed = static_cast<std::uint64_t>(seed);
      const std::string records = simulate_to_files(spec, opts.out_dir);
      std::cout << "wrote " << records << " and " << opts.out_dir << "/"
                << spec.name << ".gt.json\n";
    } else if (eval->parsed()) {
      const RunConfig cfg = effective_config(opts);
      const auto scenes = discover_scenes(scenes_dir);
      for (const auto& entry : std::filesystem::directory_iterator(scenes_dir)) {
        const std::string file = entry.path().filename().string();
        const std::string suffix = ".alerts.jsonl";
        if (file.size() > suffix.size() &&
            file.substr(file.size() - suffix.size()) == suffix &&
            !std::filesystem::exists(scenes_dir + "/" +
                                     file.substr(0, file.size() - suffix.size()) +
                                     ".gt.json")) {
          throw ParseError("alert file '" + file + "' has no GT sidecar");
        }
      }
      const EvalReport report = evaluate_scenes(scenes, cfg);
      const std::string table = render_eval_table(report);
      write_text(opts.out_dir + "/report.txt", table);
      write_text(opts.out_dir + "/report.jsonl", render_eval_records(report));
      std::cout << table;
    } else if (compare->parsed()) {
      const RunConfig cfg = effective_config(opts);
      auto scenes = discover_scenes(scenes_dir);
      std::erase_if(scenes, [](const ScenePaths& s) { return s.records.empty(); });
      const CompareReport cmp = compare_predictors(
          scenes, cfg, parse_predictor_spec(predictor_a),
          parse_predictor_spec(predictor_b), opts.parallel);
      const std::string table = render_compare_table(cmp);
      write_text(opts.out_dir + "/compare.txt", table);
      write_text(opts.out_dir + "/compare_a.jsonl", render_eval_records(cmp.report_a));
      write_text(opts.out_dir + "/compare_b.jsonl", render_eval_records(cmp.report_b));
      std::cout << table;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const OrderingError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitParse;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
