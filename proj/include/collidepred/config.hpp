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

#ifndef COLLIDEPRED_CONFIG_HPP_
#define COLLIDEPRED_CONFIG_HPP_

#include <fstream>
#include <sstream>
#include <string>

#include "collidepred/engine.hpp"
#include "collidepred/errors.hpp"

namespace collidepred {

/// Everything a run needs: the engine settings plus evaluation lookahead.
struct RunConfig {
  EngineConfig engine;
  double lookahead_seconds = 3.0;

  std::int64_t lookahead_frames() const {
    return static_cast<std::int64_t>(lookahead_seconds * engine.fps);
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

/// Parses the flat `[section]` / `key = value` config format. Every key is
/// validated; unknown keys or sections are configuration errors.
inline RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      if (section != "engine" && section != "predictor" && section != "ingest" &&
          section != "eval") {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    try {
      if (section == "engine") {
        if (key == "P") cfg.engine.P = std::stoi(value);
        else if (key == "Q") cfg.engine.Q = std::stoi(value);
        else if (key == "T") cfg.engine.T = std::stoi(value);
        else if (key == "fps") cfg.engine.fps = std::stod(value);
        else if (key == "gating") cfg.engine.gating = gating_from_string(value);
        else if (key == "overlap_margin") cfg.engine.overlap_margin = std::stod(value);
        else if (key == "dedup_cooldown") cfg.engine.dedup_cooldown = std::stoi(value);
        else throw ConfigError("unknown engine key '" + key + "'");
      } else if (section == "predictor") {
        if (key == "kind") {
          cfg.engine.predictor.kind = parse_predictor_spec(value).kind;
        } else if (key == "k") {
          cfg.engine.predictor.k = std::stoi(value);
        } else if (key == "degree") {
          cfg.engine.predictor.degree = std::stoi(value);
        } else {
          throw ConfigError("unknown predictor key '" + key + "'");
        }
      } else if (section == "ingest") {
        if (key == "max_gap") cfg.engine.max_gap = std::stoi(value);
        else if (key == "eps_move") cfg.engine.eps_move = std::stod(value);
        else if (key == "min_obs") cfg.engine.min_obs = std::stoi(value);
        else throw ConfigError("unknown ingest key '" + key + "'");
      } else if (section == "eval") {
        if (key == "lookahead_seconds") cfg.lookahead_seconds = std::stod(value);
        else throw ConfigError("unknown eval key '" + key + "'");
      } else {
        throw ConfigError("key '" + key + "' outside any section");
      }
    } catch (const std::invalid_argument&) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": non-numeric value '" + value + "' for key '" + key + "'");
    }
  }
  cfg.engine.validate();
  if (cfg.lookahead_seconds <= 0.0) {
    throw ConfigError("lookahead_seconds must be > 0");
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  return parse_config(in);
}

/// Full effective configuration, echoed into every run summary so no default
/// stays hidden.
inline std::string config_to_string(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[engine]\n"
      << "P = " << cfg.engine.P << "\n"
      << "Q = " << cfg.engine.Q << "\n"
      << "T = " << cfg.engine.T << "\n"
      << "fps = " << cfg.engine.fps << "\n"
      << "gating = " << to_string(cfg.engine.gating) << "\n"
      << "overlap_margin = " << cfg.engine.overlap_margin << "\n"
      << "dedup_cooldown = " << cfg.engine.dedup_cooldown << "\n"
      << "[predictor]\n"
      << "kind = " << to_string(cfg.engine.predictor.kind) << "\n"
      << "k = " << cfg.engine.predictor.k << "\n"
      << "degree = " << cfg.engine.predictor.degree << "\n"
      << "[ingest]\n"
      << "max_gap = " << cfg.engine.max_gap << "\n"
      << "eps_move = " << cfg.engine.eps_move << "\n"
      << "min_obs = " << cfg.engine.min_obs << "\n"
      << "[eval]\n"
      << "lookahead_seconds = " << cfg.lookahead_seconds << "\n";
  return out.str();
}

}  // namespace collidepred

#endif  // COLLIDEPRED_CONFIG_HPP_
