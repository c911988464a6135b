// Copyright 2026 The AQST Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace aqst {

// Thrown when a Hilbert layout or operator shape is inconsistent.
class LayoutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid user input (configuration, parameter ranges, units).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Integrator failure. Carries the last time the solution was known to be good.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double last_good_time)
      : std::runtime_error(what + " (last good t = " + std::to_string(last_good_time) + ")"),
        last_good_time_(last_good_time) {}
  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

// A closed-form oracle hit a removable singularity (colliding exponents).
class DegenerateOracle : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace aqst
