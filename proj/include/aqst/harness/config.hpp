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

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aqst/core/state.hpp"
#include "aqst/error.hpp"
#include "aqst/harness/units.hpp"
#include "aqst/protocols/instance.hpp"
#include "json.hpp"

namespace aqst {

using json = nlohmann::ordered_json;

enum class ProtocolKind { kMinimalJump, kMinimalReservoir, kCascaded, kCqed, kBilinear };
enum class SolverKind { kMaster, kNoJump, kTrajectories };

inline const char* to_string(ProtocolKind p) {
  switch (p) {
    case ProtocolKind::kMinimalJump: return "minimal_jump";
    case ProtocolKind::kMinimalReservoir: return "minimal_reservoir";
    case ProtocolKind::kCascaded: return "cascaded";
    case ProtocolKind::kCqed: return "cqed";
    case ProtocolKind::kBilinear: return "bilinear";
  }
  return "?";
}

inline const char* to_string(SolverKind s) {
  switch (s) {
    case SolverKind::kMaster: return "master";
    case SolverKind::kNoJump: return "no_jump";
    case SolverKind::kTrajectories: return "trajectories";
  }
  return "?";
}

// Parameters are stored converted: rates in rad/us, times in us.
struct RunConfig {
  ProtocolKind protocol = ProtocolKind::kMinimalJump;
  std::map<std::string, double> params;
  std::string initial_name = "+X";  // empty when given as amplitudes
  cplx alpha = 1.0 / std::sqrt(2.0), beta = 1.0 / std::sqrt(2.0);
  double t_max = 0.0;
  std::size_t grid_points = 201;
  SolverKind solver = SolverKind::kMaster;
  std::size_t trajectories = 1000;
  std::uint64_t seed = 0;
  bool error_channels = true;
  std::size_t threads = 1;
  json source;  // the document this was parsed from, with the effective seed

  bool has(const std::string& k) const { return params.count(k) != 0; }
  double get(const std::string& k) const {
    auto it = params.find(k);
    if (it == params.end()) throw ConfigError("parameters." + k + " is required for protocol " + to_string(protocol));
    return it->second;
  }
  double get_or(const std::string& k, double fallback) const { return has(k) ? params.at(k) : fallback; }

  std::vector<double> grid() const {
    std::vector<double> t(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) t[i] = t_max * double(i) / double(grid_points - 1);
    return t;
  }
};

namespace config_detail {

inline units::Kind kind_of(const std::string& key) {
  static const std::set<std::string> dimensionless{"Phi_BI", "xi1", "xi2", "xi_cap"};
  static const std::set<std::string> times{"T1_A", "T1_B"};
  if (dimensionless.count(key)) return units::Kind::kDimensionless;
  if (times.count(key)) return units::Kind::kTime;
  return units::Kind::kRate;
}

// {"value": v, "unit": u} or "v u"; bare numbers only for dimensionless keys.
inline double quantity(const json& j, const std::string& field, units::Kind k) {
  try {
    if (j.is_number()) {
      if (k != units::Kind::kDimensionless)
        throw ConfigError(field + ": a unit tag is required; accepted units: " + units::accepted(k));
      return j.get<double>();
    }
    if (j.is_object()) {
      if (!j.contains("value") || !j["value"].is_number())
        throw ConfigError(field + ": missing numeric \"value\"");
      const std::string u = j.value("unit", std::string(k == units::Kind::kDimensionless ? "1" : ""));
      if (u.empty()) throw ConfigError(field + ": missing \"unit\"; accepted units: " + units::accepted(k));
      return units::to_internal(j["value"].get<double>(), k, u);
    }
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      std::string u = s.substr(pos);
      u.erase(0, u.find_first_not_of(' '));
      if (u.empty() && k != units::Kind::kDimensionless)
        throw ConfigError(field + ": a unit tag is required; accepted units: " + units::accepted(k));
      return units::to_internal(v, k, u);
    }
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.rfind(field, 0) == 0) throw;
    throw ConfigError(field + ": " + msg);
  } catch (const std::exception&) {
    throw ConfigError(field + ": could not parse quantity; accepted units: " + units::accepted(k));
  }
  throw ConfigError(field + ": expected {\"value\", \"unit\"}; accepted units: " + units::accepted(k));
}

inline const std::vector<std::string>& required(ProtocolKind p) {
  static const std::map<ProtocolKind, std::vector<std::string>> req{
      {ProtocolKind::kMinimalJump, {"kappa"}},
      {ProtocolKind::kMinimalReservoir, {"Omega", "gamma"}},
      {ProtocolKind::kCascaded, {"lambda", "kappa_a", "kappa_b", "gamma"}},
      {ProtocolKind::kCqed, {"kappa"}},
      {ProtocolKind::kBilinear, {"omega", "J", "g", "kappa"}}};
  return req.at(p);
}

inline ProtocolKind parse_protocol(const std::string& s) {
  if (s == "minimal_jump") return ProtocolKind::kMinimalJump;
  if (s == "minimal_reservoir") return ProtocolKind::kMinimalReservoir;
  if (s == "cascaded") return ProtocolKind::kCascaded;
  if (s == "cqed") return ProtocolKind::kCqed;
  if (s == "bilinear") return ProtocolKind::kBilinear;
  throw ConfigError("protocol: unknown value '" + s +
                    "'; expected minimal_jump, minimal_reservoir, cascaded, cqed or bilinear");
}

inline cplx complex_of(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(field + ": expected a number or [re, im]");
}

}  // namespace config_detail

// Parses and validates a run configuration document.
inline RunConfig parse_run_config(const json& doc) {
  using namespace config_detail;
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  RunConfig c;
  if (!doc.contains("protocol") || !doc["protocol"].is_string()) throw ConfigError("protocol: required string");
  c.protocol = parse_protocol(doc["protocol"].get<std::string>());

  if (doc.contains("parameters")) {
    if (!doc["parameters"].is_object()) throw ConfigError("parameters: expected an object");
    for (const auto& [k, v] : doc["parameters"].items()) c.params[k] = quantity(v, "parameters." + k, kind_of(k));
  }
  for (const auto& k : required(c.protocol))
    if (!c.has(k)) throw ConfigError("parameters." + k + " is required for protocol " + to_string(c.protocol) +
                                     "; accepted units: " + units::accepted(kind_of(k)));
  if (c.protocol == ProtocolKind::kCqed && !c.has("Phi_BI") && !(c.has("chi_b") && c.has("Omega")))
    throw ConfigError("parameters: cqed needs either Phi_BI (circuit mode) or chi_b and Omega (rate mode)");

  if (doc.contains("initial_logical")) {
    const json& il = doc["initial_logical"];
    if (il.is_string()) {
      bool found = false;
      for (const auto& p : cardinal_points())
        if (il.get<std::string>() == p.name) {
          c.initial_name = p.name;
          c.alpha = p.alpha;
          c.beta = p.beta;
          found = true;
        }
      if (!found) throw ConfigError("initial_logical: unknown cardinal point; expected +Z, -Z, +X, -X, +Y or -Y");
    } else if (il.is_object() && il.contains("alpha") && il.contains("beta")) {
      c.initial_name.clear();
      c.alpha = complex_of(il["alpha"], "initial_logical.alpha");
      c.beta = complex_of(il["beta"], "initial_logical.beta");
      if (std::abs(std::norm(c.alpha) + std::norm(c.beta) - 1.0) > 1e-9)
        throw ConfigError("initial_logical: |alpha|^2 + |beta|^2 must equal 1");
    } else {
      throw ConfigError("initial_logical: expected a cardinal name or {\"alpha\", \"beta\"}");
    }
  }

  if (!doc.contains("t_max")) throw ConfigError("t_max is required; accepted units: " + std::string(units::accepted(units::Kind::kTime)));
  c.t_max = quantity(doc["t_max"], "t_max", units::Kind::kTime);
  if (!(c.t_max > 0.0)) throw ConfigError("t_max must be > 0");
  if (doc.contains("grid_points")) {
    if (!doc["grid_points"].is_number_integer() || doc["grid_points"].get<long long>() < 2)
      throw ConfigError("grid_points: expected an integer >= 2");
    c.grid_points = doc["grid_points"].get<std::size_t>();
  }

  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    if (s.is_string()) {
      const std::string v = s.get<std::string>();
      if (v == "master") c.solver = SolverKind::kMaster;
      else if (v == "no_jump") c.solver = SolverKind::kNoJump;
      else if (v == "trajectories") c.solver = SolverKind::kTrajectories;
      else throw ConfigError("solver: expected master, no_jump, trajectories or {\"trajectories\": N}");
    } else if (s.is_object() && s.contains("trajectories")) {
      c.solver = SolverKind::kTrajectories;
      if (!s["trajectories"].is_number_integer() || s["trajectories"].get<long long>() < 1)
        throw ConfigError("solver.trajectories: expected a positive integer");
      c.trajectories = s["trajectories"].get<std::size_t>();
    } else {
      throw ConfigError("solver: expected master, no_jump, trajectories or {\"trajectories\": N}");
    }
  }
  if (doc.contains("trajectories")) {
    if (!doc["trajectories"].is_number_integer() || doc["trajectories"].get<long long>() < 1)
      throw ConfigError("trajectories: expected a positive integer");
    c.trajectories = doc["trajectories"].get<std::size_t>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !(doc["seed"].is_number_integer() && doc["seed"].get<long long>() >= 0))
      throw ConfigError("seed: expected a non-negative integer");
    c.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("threads")) {
    if (!doc["threads"].is_number_integer() || doc["threads"].get<long long>() < 1)
      throw ConfigError("threads: expected a positive integer");
    c.threads = doc["threads"].get<std::size_t>();
  }

  // "error_channels": true | false | {"enabled": bool, "overrides": {...}}
  if (doc.contains("error_channels")) {
    const json& e = doc["error_channels"];
    if (e.is_boolean()) {
      c.error_channels = e.get<bool>();
    } else if (e.is_object()) {
      c.error_channels = e.value("enabled", true);
      if (e.contains("overrides")) {
        if (!e["overrides"].is_object()) throw ConfigError("error_channels.overrides: expected an object");
        for (const auto& [k, v] : e["overrides"].items())
          c.params[k] = quantity(v, "error_channels.overrides." + k, kind_of(k));
      }
    } else {
      throw ConfigError("error_channels: expected a boolean or {\"enabled\", \"overrides\"}");
    }
  }
  c.source = doc;
  c.source["seed"] = c.seed;
  return c;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open configuration file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": malformed JSON: " + e.what());
  }
  return parse_run_config(doc);
}

}  // namespace aqst
