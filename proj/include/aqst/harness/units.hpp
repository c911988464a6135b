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

#include <cmath>
#include <string>

#include "aqst/cqed/circuit.hpp"
#include "aqst/error.hpp"

namespace aqst::units {

enum class Kind { kRate, kTime, kDimensionless };

inline const char* accepted(Kind k) {
  switch (k) {
    case Kind::kRate: return "rad/us, MHz/2pi, GHz/2pi, kHz/2pi";
    case Kind::kTime: return "us, ns, ms";
    case Kind::kDimensionless: return "1 (or a bare number)";
  }
  return "";
}

// Multiplier taking a value in `unit` to the internal unit (rad/us or us).
inline double factor(Kind k, const std::string& unit) {
  switch (k) {
    case Kind::kRate:
      if (unit == "rad/us") return 1.0;
      if (unit == "MHz/2pi") return kTwoPi;
      if (unit == "GHz/2pi") return kTwoPi * 1e3;
      if (unit == "kHz/2pi") return kTwoPi * 1e-3;
      break;
    case Kind::kTime:
      if (unit == "us") return 1.0;
      if (unit == "ns") return 1e-3;
      if (unit == "ms") return 1e3;
      break;
    case Kind::kDimensionless:
      if (unit == "1" || unit.empty()) return 1.0;
      break;
  }
  throw ConfigError("unit '" + unit + "' not accepted; use one of: " + accepted(k));
}

inline double to_internal(double value, Kind k, const std::string& unit) { return value * factor(k, unit); }
inline double from_internal(double value, Kind k, const std::string& unit) { return value / factor(k, unit); }

inline double mhz_to_rad(double mhz_over_2pi) { return mhz_over_2pi * kTwoPi; }
inline double rad_to_mhz(double rad_per_us) { return rad_per_us / kTwoPi; }

}  // namespace aqst::units
