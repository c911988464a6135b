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
#include <string>
#include <utility>
#include <vector>

#include "aqst/error.hpp"
#include "aqst/harness/config.hpp"
#include "aqst/version.hpp"

namespace aqst {

struct Provenance {
  std::string code_version = kVersion;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
};

struct ResultRecord {
  json config;  // echo; parse_run_config(config) reproduces the run
  std::vector<double> times;
  std::vector<std::pair<std::string, std::vector<double>>> series;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::string> warnings;
  json metadata = json::object();
  Provenance provenance;

  void add_series(std::string name, std::vector<double> v) {
    if (v.size() != times.size())
      throw std::logic_error("series '" + name + "' has " + std::to_string(v.size()) + " points, grid has " +
                             std::to_string(times.size()));
    series.emplace_back(std::move(name), std::move(v));
  }
  void set_scalar(const std::string& name, double v) {
    for (auto& [k, x] : scalars)
      if (k == name) {
        x = v;
        return;
      }
    scalars.emplace_back(name, v);
  }
  const std::vector<double>& get_series(const std::string& name) const {
    for (const auto& [k, v] : series)
      if (k == name) return v;
    throw std::out_of_range("no series '" + name + "'");
  }
  double scalar(const std::string& name) const {
    for (const auto& [k, v] : scalars)
      if (k == name) return v;
    throw std::out_of_range("no scalar '" + name + "'");
  }
  bool has_scalar(const std::string& name) const {
    for (const auto& [k, v] : scalars)
      if (k == name) return true;
    return false;
  }
};

// Everything except wall time.
inline bool same_content(const ResultRecord& a, const ResultRecord& b) {
  return a.config == b.config && a.times == b.times && a.series == b.series && a.scalars == b.scalars &&
         a.warnings == b.warnings && a.metadata == b.metadata &&
         a.provenance.code_version == b.provenance.code_version && a.provenance.seed == b.provenance.seed;
}

inline bool operator==(const ResultRecord& a, const ResultRecord& b) {
  return same_content(a, b) && a.provenance.wall_time_s == b.provenance.wall_time_s;
}

inline json to_json(const ResultRecord& r) {
  json j;
  j["config"] = r.config;
  j["times_us"] = r.times;
  json s = json::object();
  for (const auto& [k, v] : r.series) s[k] = v;
  j["series"] = s;
  json sc = json::object();
  for (const auto& [k, v] : r.scalars) sc[k] = v;
  j["scalars"] = sc;
  j["warnings"] = r.warnings;
  j["metadata"] = r.metadata;
  j["provenance"] = {{"code_version", r.provenance.code_version},
                     {"seed", r.provenance.seed},
                     {"wall_time_s", r.provenance.wall_time_s}};
  return j;
}

inline ResultRecord record_from_json(const json& j) {
  try {
    ResultRecord r;
    r.config = j.at("config");
    r.times = j.at("times_us").get<std::vector<double>>();
    for (const auto& [k, v] : j.at("series").items()) r.series.emplace_back(k, v.get<std::vector<double>>());
    for (const auto& [k, v] : j.at("scalars").items()) r.scalars.emplace_back(k, v.get<double>());
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.metadata = j.value("metadata", json::object());
    const json& p = j.at("provenance");
    r.provenance.code_version = p.at("code_version").get<std::string>();
    r.provenance.seed = p.at("seed").get<std::uint64_t>();
    r.provenance.wall_time_s = p.at("wall_time_s").get<double>();
    for (const auto& [k, v] : r.series)
      if (v.size() != r.times.size()) throw ConfigError("record series '" + k + "' length differs from the grid");
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed result record: ") + e.what());
  }
}

inline ResultRecord load_record(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open result record");
  try {
    return record_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw IoError(path, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace aqst
