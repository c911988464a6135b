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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "aqst/aqst.hpp"

using namespace aqst;

namespace {

json minimal_doc() {
  return json::parse(R"({
    "protocol": "minimal_jump",
    "parameters": {"kappa": {"value": 0.1, "unit": "MHz/2pi"}},
    "initial_logical": "+X",
    "t_max": "10 us",
    "grid_points": 51,
    "seed": 7
  })");
}

std::string error_of(const json& doc) {
  try {
    parse_run_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Units, ConversionsInvert) {
  using namespace units;
  for (const char* u : {"rad/us", "MHz/2pi", "GHz/2pi", "kHz/2pi"})
    EXPECT_NEAR(from_internal(to_internal(3.7, Kind::kRate, u), Kind::kRate, u), 3.7, 1e-12) << u;
  for (const char* u : {"us", "ns", "ms"})
    EXPECT_NEAR(from_internal(to_internal(3.7, Kind::kTime, u), Kind::kTime, u), 3.7, 1e-12) << u;
  EXPECT_NEAR(to_internal(1.0, Kind::kRate, "MHz/2pi"), 2.0 * std::numbers::pi, 1e-15);
  EXPECT_NEAR(rad_to_mhz(mhz_to_rad(0.25)), 0.25, 1e-15);
  try {
    factor(Kind::kRate, "Hz");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("MHz/2pi"), std::string::npos);
  }
}

TEST(Config, ParsesQuantitiesAndCardinals) {
  const auto c = parse_run_config(minimal_doc());
  EXPECT_EQ(c.protocol, ProtocolKind::kMinimalJump);
  EXPECT_NEAR(c.get("kappa"), 0.2 * std::numbers::pi, 1e-15);
  EXPECT_NEAR(c.t_max, 10.0, 0.0);
  EXPECT_EQ(c.initial_name, "+X");
  EXPECT_EQ(c.grid().size(), 51u);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.solver, SolverKind::kMaster);
}

TEST(Config, MissingUnitNamesFieldAndUnits) {
  auto doc = minimal_doc();
  doc["parameters"]["kappa"] = 0.1;
  const std::string msg = error_of(doc);
  EXPECT_NE(msg.find("parameters.kappa"), std::string::npos) << msg;
  EXPECT_NE(msg.find("MHz/2pi"), std::string::npos) << msg;
}

TEST(Config, RejectsBadInputs) {
  auto d1 = minimal_doc();
  d1["parameters"].erase("kappa");
  EXPECT_NE(error_of(d1).find("kappa"), std::string::npos);
  auto d2 = minimal_doc();
  d2["initial_logical"] = "+W";
  EXPECT_FALSE(error_of(d2).empty());
  auto d3 = minimal_doc();
  d3["initial_logical"] = {{"alpha", 1.0}, {"beta", 1.0}};
  EXPECT_FALSE(error_of(d3).empty());
  auto d4 = minimal_doc();
  d4["t_max"] = "10 parsec";
  EXPECT_NE(error_of(d4).find("t_max"), std::string::npos);
  auto d5 = minimal_doc();
  d5["solver"] = "euler";
  EXPECT_FALSE(error_of(d5).empty());
  auto d6 = minimal_doc();
  d6["protocol"] = "teleport";
  EXPECT_FALSE(error_of(d6).empty());
  EXPECT_FALSE(error_of(json::array()).empty());
}

TEST(Config, DimensionlessAcceptsBareNumbers) {
  const json doc = json::parse(R"({"protocol":"cqed","parameters":{"Phi_BI":0.006,"kappa":"1 MHz/2pi"},
                                   "t_max":"5 us","solver":{"trajectories":16}})");
  const auto c = parse_run_config(doc);
  EXPECT_DOUBLE_EQ(c.get("Phi_BI"), 0.006);
  EXPECT_EQ(c.solver, SolverKind::kTrajectories);
  EXPECT_EQ(c.trajectories, 16u);
}

TEST(Config, MissingFileIsIoErrorNamingPath) {
  const std::string path = "/nonexistent_dir/cfg.json";
  try {
    load_run_config(path);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.path(), path);
    EXPECT_NE(std::string(e.what()).find(path), std::string::npos);
  }
}

TEST(Run, MinimalJumpMatchesOracle) {
  const auto r = run(parse_run_config(minimal_doc()));
  EXPECT_GE(r.scalar("final_fidelity"), 0.998);
  EXPECT_LT(r.scalar("oracle_max_fidelity_deviation"), 1e-6);
  EXPECT_EQ(r.times.size(), 51u);
  EXPECT_EQ(r.get_series("fidelity").size(), 51u);
  EXPECT_EQ(r.provenance.seed, 7u);
}

TEST(Run, ConfigEchoReproduces) {
  const auto r = run(parse_run_config(minimal_doc()));
  const auto again = run(parse_run_config(r.config));
  EXPECT_TRUE(same_content(r, again));
}

TEST(Run, CqedZeroChiRateMode) {
  const json doc = json::parse(R"({"protocol":"cqed",
      "parameters":{"chi_b":"0 MHz/2pi","Omega":"0.1 MHz/2pi","kappa":"1 MHz/2pi"},
      "error_channels":false,"initial_logical":"+X","t_max":"40 us","grid_points":81})");
  const auto r = run(parse_run_config(doc));
  EXPECT_GT(r.scalar("best_fidelity"), 1.0 - 1e-3);
}

TEST(Run, NoJumpLeakAccounting) {
  auto doc = minimal_doc();
  doc["solver"] = "no_jump";
  const auto r = run(parse_run_config(doc));
  const auto& n2 = r.get_series("norm_squared");
  const auto& leak = r.get_series("leak_total");
  for (std::size_t i = 0; i < n2.size(); ++i) EXPECT_NEAR(n2[i] + leak[i], 1.0, 1e-8);
}

TEST(Run, TrajectoriesDeterministic) {
  auto doc = minimal_doc();
  doc["solver"] = {{"trajectories", 64}};
  doc["grid_points"] = 11;
  const auto a = run(parse_run_config(doc));
  const auto b = run(parse_run_config(doc));
  EXPECT_TRUE(same_content(a, b));
  doc["threads"] = 2;
  const auto c = run(parse_run_config(doc));
  EXPECT_EQ(a.get_series("fidelity"), c.get_series("fidelity"));
  doc["seed"] = 8;
  doc["threads"] = 1;
  EXPECT_FALSE(same_content(a, run(parse_run_config(doc))));
}

TEST(Record, JsonRoundTripExact) {
  const auto r = run(parse_run_config(minimal_doc()));
  const auto back = record_from_json(json::parse(to_json(r).dump()));
  EXPECT_TRUE(back == r);
}

TEST(Record, SeriesLengthChecked) {
  ResultRecord r;
  r.times = {0.0, 1.0};
  EXPECT_THROW(r.add_series("x", {1.0}), std::logic_error);
}

TEST(Emit, CsvShape) {
  const auto r = run(parse_run_config(minimal_doc()));
  const std::string csv = emit_string(r, Format::kCsv);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 52);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(csv.rfind("time_us", 0), 0u);
}

TEST(Emit, SvgStaysSmall) {
  std::vector<svg::Series> s;
  for (int k = 0; k < 64; ++k) {
    svg::Series x{"set" + std::to_string(k), {}, {}};
    for (int i = 0; i < 5000; ++i) {
      x.x.push_back(i * 0.01);
      x.y.push_back(std::exp(-0.001 * k * i));
    }
    s.push_back(std::move(x));
  }
  const std::string out = svg::line_plot("t", "x", "y", s);
  EXPECT_LT(out.size(), 1u << 20);
  EXPECT_EQ(out.rfind("<svg", 0), 0u);
}

TEST(Emit, UnwritablePathIsIoError) {
  EXPECT_THROW(write_text("/nonexistent_dir/out.csv", "x"), IoError);
  EXPECT_THROW(parse_format("xml"), ConfigError);
}

TEST(Sweep, Fig2cOrderAndThreadInvariant) {
  Fig2cOptions a;
  a.lambda_over_kappa_b = {0.02, 0.1};
  a.gamma_over_omega = {2.0, 5.0};
  a.grid_points = 200;
  Fig2cOptions b = a;
  b.lambda_over_kappa_b = {0.1, 0.02};
  b.gamma_over_omega = {5.0, 2.0};
  b.threads = 2;
  const auto ra = sweep_fig2c(a), rb = sweep_fig2c(b);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const auto& x = ra.at(i, j);
      const auto& y = rb.at(1 - i, 1 - j);
      EXPECT_EQ(x.lambda_over_kappa_b, y.lambda_over_kappa_b);
      EXPECT_EQ(x.fidelity, y.fidelity);
      EXPECT_EQ(x.t_stop, y.t_stop);
    }
  const auto& c = ra.at(0, 0);
  EXPECT_NEAR(1.0 - c.fidelity, c.oracle_infidelity, 0.1 * c.oracle_infidelity);
}

TEST(Sweep, ParseOptions) {
  const auto o = parse_fig2c_options(json::parse(R"({"lambda_over_kappa_b":[0.05],"gamma_over_omega":[1,2]})"));
  EXPECT_EQ(o.lambda_over_kappa_b.size(), 1u);
  EXPECT_EQ(o.gamma_over_omega.size(), 2u);
  EXPECT_THROW(parse_fig2c_options(json::parse(R"({"gamma_over_omega":[-1]})")), ConfigError);
  EXPECT_THROW(parse_fig3c_request(json::parse(R"({"mode":"explicit","sets":[{"chi_b":"1 MHz/2pi"}]})")), ConfigError);
  const auto r = parse_fig3c_request(json::parse(
      R"({"mode":"explicit","sets":[{"chi_b":"0.1 MHz/2pi","Omega":"0.1 MHz/2pi","kappa":"1 MHz/2pi"}]})"));
  EXPECT_EQ(r.curves.sets.size(), 1u);
  EXPECT_TRUE(r.curves.phi_BI.empty());
}

TEST(Fit, LinearAndLogLog) {
  const auto f = fit::linear({0, 1, 2, 3}, {1, 3, 5, 7});
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.r2, 1.0, 1e-14);
  const auto g = fit::log_log({1, 2, 4, 8}, {3, 0.75, 0.1875, 0.046875});
  EXPECT_NEAR(g.slope, -2.0, 1e-12);
}

TEST(Fit, MatrixPencilRecoversRates) {
  std::vector<double> y;
  const double dt = 0.05;
  for (int k = 0; k < 200; ++k) y.push_back(2.0 * std::exp(-0.3 * k * dt) + 0.5 * std::exp(-2.0 * k * dt));
  const auto p = fit::matrix_pencil(y, dt, 2);
  EXPECT_NEAR(p[0].rate.real(), 0.3, 1e-8);
  EXPECT_NEAR(p[1].rate.real(), 2.0, 1e-8);
  EXPECT_NEAR(fit::slowest_decay_rate(p), 0.3, 1e-8);
}

TEST(Fit, GoldenSection) {
  const auto g = fit::golden_section_max([](double x) { return -(x - 1.3) * (x - 1.3); }, 0.0, 4.0, 1e-8);
  EXPECT_NEAR(g.x, 1.3, 1e-7);
}

TEST(Reports, DiagnoseMinimal) {
  const json d = diagnose(parse_run_config(minimal_doc()));
  EXPECT_TRUE(d.at("dark_manifold_targets").at("verdict").get<bool>());
  EXPECT_FALSE(d.at("dark_manifold_initial").at("verdict").get<bool>());
  EXPECT_LT(d.at("orthogonality").at("max_overlap").get<double>(), 1e-10);
}

TEST(Reports, OracleRecordRejectsBilinear) {
  const json doc = json::parse(R"({"protocol":"bilinear","parameters":{"omega":"100 rad/us","J":"1 rad/us",
      "g":"0.05 rad/us","kappa":"0.5 rad/us"},"t_max":"10 us"})");
  EXPECT_THROW(oracle_record(parse_run_config(doc)), ConfigError);
}

TEST(Reports, DeriveTableRow) {
  const json t = derive_table({kTablePhiBILow});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_NEAR(t[0].at("chi_BR").get<double>(), 0.0256224, 1e-7);
}

TEST(Run, CqedRelativePhaseMatchesOracle) {
  const json doc = json::parse(R"({"protocol":"cqed",
      "parameters":{"chi_b":"0.1 rad/us","Omega":"0.05 rad/us","kappa":"1 rad/us"},
      "error_channels":false,"initial_logical":"+X","t_max":"4000 us","grid_points":101})");
  const auto r = run(parse_run_config(doc));
  const double want = r.scalar("oracle_relative_phase");
  EXPECT_NEAR(r.scalar("final_relative_phase"), want, 0.05 * std::abs(want));
  EXPECT_NEAR(r.scalar("phase_corrected_infidelity"), r.scalar("oracle_infidelity_corrected"),
              0.05 * r.scalar("oracle_infidelity_corrected"));
}
