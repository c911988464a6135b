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

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "aqst/diagnostics/manifold.hpp"
#include "aqst/diagnostics/orthogonality.hpp"
#include "aqst/diagnostics/separability.hpp"
#include "aqst/harness/run.hpp"
#include "aqst/harness/sweeps.hpp"

namespace aqst {

// Closed-form predictions for a run configuration, on the same grid.
inline ResultRecord oracle_record(const RunConfig& c) {
  ResultRecord r;
  r.config = c.source;
  r.times = c.grid();
  r.provenance.seed = c.seed;
  r.metadata["oracle"] = to_string(c.protocol);
  const std::size_t n = r.times.size();
  std::vector<double> a(n), b(n), d(n);
  switch (c.protocol) {
    case ProtocolKind::kMinimalJump: {
      const double k = c.get("kappa");
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = 1.0 - std::exp(-k * r.times[i]);
        b[i] = std::exp(-k * r.times[i]);
      }
      r.add_series("fidelity", a);
      r.add_series("pop_A", b);
      r.add_series("pop_B", a);
      r.set_scalar("final_fidelity", a.back());
      break;
    }
    case ProtocolKind::kMinimalReservoir: {
      const double om = c.get("Omega"), g = c.get("gamma");
      const double ke = kappa_eff(om, g);
      for (std::size_t i = 0; i < n; ++i) a[i] = 1.0 - std::exp(-ke * r.times[i]);
      r.add_series("fidelity_effective_jump", a);
      r.set_scalar("convergence_rate", convergence_rate(om, g));
      r.set_scalar("kappa_eff", ke);
      break;
    }
    case ProtocolKind::kCascaded: {
      const double l = c.get("lambda"), ka = c.get("kappa_a"), kb = c.get("kappa_b"), g = c.get("gamma");
      if (c.has("Omega") && std::abs(4.0 * c.get("Omega") * c.get("Omega") / g - kb) > 1e-9 * kb)
        throw ConfigError("oracle: the cascaded closed form requires Omega = sqrt(kappa_b gamma) / 2");
      const auto ci = cascaded_infidelity(l, ka, kb, g);
      const auto co = cascaded_coefficients(l, ka, kb, ci.gamma_used);
      std::vector<double> e(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double t = r.times[i];
        a[i] = std::norm(co.C1(t));
        b[i] = std::norm(co.C2(t));
        d[i] = std::norm(co.C3(t));
        e[i] = std::norm(co.leak_amplitude(t));
      }
      r.add_series("abs2_C1", a);
      r.add_series("abs2_C2", b);
      r.add_series("abs2_C3", d);
      r.add_series("leak_rate", e);
      r.set_scalar("infidelity_analytic", ci.analytic);
      r.set_scalar("infidelity_quadrature", ci.quadrature);
      r.set_scalar("infidelity_limit_large_gamma", ci.limit_large_gamma);
      r.set_scalar("infidelity_limit_quarter", ci.limit_quarter);
      r.set_scalar("gamma_used", ci.gamma_used);
      r.metadata["damping_regime"] = to_string(co.regime);
      if (ci.perturbed) r.warnings.push_back("gamma perturbed by 1e-6 relative to avoid a degenerate exponent");
      break;
    }
    case ProtocolKind::kCqed: {
      const auto inst = build_instance(c);
      const double chi = inst.params.at("chi_b"), k = inst.params.at("kappa"), om = inst.params.at("Omega1");
      const auto o = cqed_phase_and_infidelity(chi, k, om);
      for (std::size_t i = 0; i < n; ++i) {
        const auto q = cqed_quasi_steady(r.times[i], om, k, chi);
        a[i] = std::norm(q.e0);
        b[i] = std::norm(q.e1);
        d[i] = cqed_eta(r.times[i], om, k, chi);
      }
      r.add_series("abs2_e0", a);
      r.add_series("abs2_e1", b);
      r.add_series("eta", d);
      r.set_scalar("infidelity_raw", o.infidelity_raw);
      r.set_scalar("infidelity_corrected", o.infidelity_corrected);
      r.set_scalar("mean_phase", o.eta_avg);
      r.warnings = o.warnings;
      break;
    }
    case ProtocolKind::kBilinear:
      throw ConfigError("oracle: no closed form is available for protocol bilinear");
  }
  return r;
}

// Dark-manifold, orthogonality and final-state separability checks.
inline json diagnose(const RunConfig& c, const IntegratorOptions& opt = {}) {
  const ProtocolInstance inst = build_instance(c);
  json out;
  out["config"] = c.source;
  out["instance"] = inst.name;
  auto manifold_json = [](const ManifoldReport& m) {
    json s = json::array();
    for (const auto& e : m.states)
      s.push_back({{"energy", e.energy},
                   {"eigen_residual", e.eigen_residual},
                   {"jump_norms", e.jump_norms},
                   {"dark", e.dark},
                   {"H_eigenstate", e.is_H_eigenstate}});
    return json{{"verdict", m.verdict}, {"tol", m.tol}, {"channels", m.channels}, {"states", s}};
  };
  out["dark_manifold_targets"] = manifold_json(check_dark_manifold(inst.model, inst.dark_targets));
  out["dark_manifold_initial"] =
      manifold_json(check_dark_manifold(inst.model, {inst.initial_basis[0], inst.initial_basis[1]}));

  const auto grid = c.grid();
  const auto lo = check_logical_orthogonality(inst, grid, {}, opt);
  out["orthogonality"] = {{"max_overlap", lo.max()},
                          {"times_us", lo.z_pair.times},
                          {"z_pair", lo.z_pair.overlap},
                          {"x_pair", lo.x_pair.overlap}};

  const Ket init = inst.encode(c.alpha, c.beta);
  const ReducedModel red = reduce_to_invariant_subspace(inst.model, {init.amplitudes()});
  const Vec i_r = red.reduce(init.amplitudes());
  Mat last;
  evolve_master_observe(red.model, i_r * i_r.adjoint(), {0.0, c.t_max}, opt, [&](std::size_t, double, const Mat& m) {
    last = m;
    return true;
  });
  const auto sep = logical_position_decomposition(DensityMatrix(inst.layout(), red.lift(last)), inst.positions);
  json pos = json::array();
  for (const auto& p : sep.positions)
    pos.push_back({{"label", p.label},
                   {"probability", p.probability},
                   {"purity", p.purity},
                   {"relative_phase", p.relative_phase}});
  out["separability_final"] = {{"separable", sep.separable},
                               {"probability_sum", sep.probability_sum},
                               {"min_pairwise_fidelity", sep.min_pairwise_fidelity},
                               {"positions", pos}};
  out["warnings"] = inst.warnings;
  return out;
}

// ------------------------------------------------------ sweep configurations

namespace sweep_config_detail {
inline std::vector<double> positive_list(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError(field + ": expected a non-empty array of numbers");
  std::vector<double> v;
  for (const auto& x : j) {
    if (!x.is_number() || !(x.get<double>() > 0.0)) throw ConfigError(field + ": values must be positive numbers");
    v.push_back(x.get<double>());
  }
  return v;
}
inline std::size_t count(const json& j, const std::string& field, std::size_t min) {
  if (!j.is_number_integer() || j.get<long long>() < (long long)min)
    throw ConfigError(field + ": expected an integer >= " + std::to_string(min));
  return j.get<std::size_t>();
}
}  // namespace sweep_config_detail

inline Fig2cOptions parse_fig2c_options(const json& j) {
  using namespace sweep_config_detail;
  Fig2cOptions o = Fig2cOptions::default_grid();
  if (j.is_null()) return o;
  if (!j.is_object()) throw ConfigError("sweep configuration must be a JSON object");
  if (j.contains("lambda_over_kappa_b")) o.lambda_over_kappa_b = positive_list(j["lambda_over_kappa_b"], "lambda_over_kappa_b");
  if (j.contains("gamma_over_omega")) o.gamma_over_omega = positive_list(j["gamma_over_omega"], "gamma_over_omega");
  if (j.contains("t_max_factor")) o.t_max_factor = positive_list(json::array({j["t_max_factor"]}), "t_max_factor")[0];
  if (j.contains("grid_points")) o.grid_points = count(j["grid_points"], "grid_points", 11);
  if (j.contains("plateau_rel")) o.plateau_rel = positive_list(json::array({j["plateau_rel"]}), "plateau_rel")[0];
  if (j.contains("seed")) o.seed = j["seed"].get<std::uint64_t>();
  return o;
}

struct Fig3cRequest {
  enum class Mode { kAuto, kExplicit, kInset } mode = Mode::kAuto;
  Fig3cOptions curves = Fig3cOptions::default_auto();
  InsetOptions inset;
};

inline Fig3cRequest parse_fig3c_request(const json& j) {
  using namespace sweep_config_detail;
  using config_detail::quantity;
  Fig3cRequest r;
  if (j.is_null()) return r;
  if (!j.is_object()) throw ConfigError("sweep configuration must be a JSON object");
  const std::string mode = j.value("mode", std::string("auto"));
  if (mode == "auto") r.mode = Fig3cRequest::Mode::kAuto;
  else if (mode == "explicit") r.mode = Fig3cRequest::Mode::kExplicit;
  else if (mode == "inset") r.mode = Fig3cRequest::Mode::kInset;
  else throw ConfigError("mode: expected auto, explicit or inset");

  auto& o = r.curves;
  if (j.contains("t_max")) o.t_max = quantity(j["t_max"], "t_max", units::Kind::kTime);
  if (j.contains("grid_points")) o.grid_points = count(j["grid_points"], "grid_points", 2);
  if (j.contains("error_channels")) o.error_channels = j["error_channels"].get<bool>();
  if (j.contains("kappa_range")) {
    const json& kr = j["kappa_range"];
    if (!kr.is_array() || kr.size() != 2) throw ConfigError("kappa_range: expected [low, high] rates");
    o.kappa_lo = quantity(kr[0], "kappa_range[0]", units::Kind::kRate);
    o.kappa_hi = quantity(kr[1], "kappa_range[1]", units::Kind::kRate);
    if (!(o.kappa_lo > 0.0 && o.kappa_hi > o.kappa_lo)) throw ConfigError("kappa_range: need 0 < low < high");
  }
  if (j.contains("phi_BI")) o.phi_BI = positive_list(j["phi_BI"], "phi_BI");
  if (r.mode == Fig3cRequest::Mode::kExplicit) {
    o.phi_BI.clear();
    if (!j.contains("sets") || !j["sets"].is_array() || j["sets"].empty())
      throw ConfigError("sets: explicit mode needs a non-empty array of parameter sets");
    for (std::size_t i = 0; i < j["sets"].size(); ++i) {
      const json& s = j["sets"][i];
      const std::string f = "sets[" + std::to_string(i) + "].";
      auto rate = [&](const char* k, bool req, double dflt) {
        if (!s.contains(k)) {
          if (req) throw ConfigError(f + k + " is required; accepted units: " + units::accepted(units::Kind::kRate));
          return dflt;
        }
        return quantity(s[k], f + k, units::Kind::kRate);
      };
      CqedSet c;
      c.label = s.value("label", "set" + std::to_string(i));
      c.chi_b = rate("chi_b", true, 0);
      c.Omega = rate("Omega", true, 0);
      c.kappa = rate("kappa", true, 0);
      c.chi_AR = rate("chi_AR", false, 0);
      c.chi_AB = rate("chi_AB", false, 0);
      c.gamma_up = rate("gamma_up", false, -1);
      if (s.contains("T1_A")) c.T1_A = quantity(s["T1_A"], f + "T1_A", units::Kind::kTime);
      if (s.contains("T1_B")) c.T1_B = quantity(s["T1_B"], f + "T1_B", units::Kind::kTime);
      o.sets.push_back(c);
    }
  }
  if (j.contains("chi_over_kappa")) r.inset.chi_over_kappa = positive_list(j["chi_over_kappa"], "chi_over_kappa");
  if (j.contains("omega_over_kappa"))
    r.inset.omega_over_kappa = positive_list(j["omega_over_kappa"], "omega_over_kappa");
  return r;
}

// Table of derived cQED parameters over Phi_BI, in MHz/2pi unless noted.
inline json derive_table(const std::vector<double>& phi_BI) {
  json rows = json::array();
  for (double phi : phi_BI) {
    const CircuitParams c = table_circuit(phi);
    const DerivedCqedParams d = derive_drives(c);
    const auto [t1a, t1b] = table_loaded_t1(d.chi_BR);
    rows.push_back({{"Phi_BI", phi},
                    {"alpha_A", d.alpha[kModeA] / kTwoPi},
                    {"alpha_B", d.alpha[kModeB] / kTwoPi},
                    {"alpha_R", d.alpha[kModeR] / kTwoPi},
                    {"chi_AB", d.chi_AB / kTwoPi},
                    {"chi_AR", d.chi_AR / kTwoPi},
                    {"chi_BR", d.chi_BR / kTwoPi},
                    {"Omega1", d.Omega1 / kTwoPi},
                    {"Omega2", d.Omega2 / kTwoPi},
                    {"xi1", std::abs(d.xi1)},
                    {"xi2", std::abs(d.xi2)},
                    {"delta1", d.delta1 / kTwoPi},
                    {"delta2", d.delta2 / kTwoPi},
                    {"omega1_GHz", d.omega1 / kTwoPi / 1e3},
                    {"omega2_GHz", d.omega2 / kTwoPi / 1e3},
                    {"T1_A_us", t1a},
                    {"T1_B_us", t1b}});
  }
  return rows;
}

}  // namespace aqst
