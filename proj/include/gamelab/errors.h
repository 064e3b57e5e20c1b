// Copyright 2026 The GameLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAMELAB_ERRORS_H_
#define GAMELAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace gamelab {

// Shape mismatches and malformed arguments (wrong dimensions, empty vectors).
class StructuralError : public std::logic_error {
 public:
  explicit StructuralError(const std::string& what) : std::logic_error(what) {}
};

// Invalid user configuration. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A protocol rule was broken, e.g. learning rates computed from a schedule
// state that already saw the previous round's feedback.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what)
      : std::logic_error(what) {}
};

// Failures that only show up while a run is executing (non-finite feedback,
// exhausted rejection sampling, identity check failures).
class RunError : public std::runtime_error {
 public:
  explicit RunError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gamelab

#endif  // GAMELAB_ERRORS_H_
