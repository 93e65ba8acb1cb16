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

#ifndef COLLIDEPRED_ERRORS_HPP_
#define COLLIDEPRED_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace collidepred {

/// Invalid configuration value or malformed predictor/scenario spec.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input data; carries file/line context where available.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// File could not be opened or written.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Observation arrived with a frame index lower than already recorded.
class OrderingError : public std::runtime_error {
public:
  explicit OrderingError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace collidepred

#endif  // COLLIDEPRED_ERRORS_HPP_
