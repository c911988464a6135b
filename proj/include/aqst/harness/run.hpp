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

#include "aqst/cqed/circuit.hpp"
#include "aqst/cqed/model.hpp"
#include "aqst/dynamics/master.hpp"
#include "aqst/dynamics/no_jump.hpp"
#include "aqst/dynamics/subspace.hpp"
#include "aqst/dynamics/trajectory.hpp"
#include "aqst/harness/config.hpp"
#include "aqst/harness/record.hpp"
#include "aqst/oracles/cascaded.hpp"
#include "aqst/oracles/cqed.hpp"
#include "aqst/oracles/minimal.hpp"
#include "aqst/protocols/bilinear.hpp"
#include "aqst/protocols/cascaded.hpp"
#include "aqst/protocols/minimal.hpp"

namespace aqst {

// cQED instance from the reference circuit: Phi_BI selects the B-mode coupling,
// drives come from the xi caps (or a requested Omega), loaded T1 from the
// tabulated range unless overridden.
inline ProtocolInstance build_cqed_from_circuit(double phi_BI, double kappa, bool error_channels,
                                                const std::map<std::string, double>& overrides = {},
                                                DerivedCqedParams* derived_out = nullptr) {
  auto opt = [&](const char* k) -> const double* {
    auto it = overrides.find(k);
    return it == overrides.end() ? nullptr : &it->second;
  };
  CircuitParams c = table_circuit(phi_BI, kappa);
  if (auto* v = opt("xi_cap")) c.xi_cap = *v;
  DriveRequest req;
  if (auto* v = opt("Omega")) {
    req.mode = DriveRequest::Mode::kTargetOmega;
    req.target_Omega = *v;
  }
  DerivedCqedParams d = derive_drives(c, req);
  const auto [t1a, t1b] = table_loaded_t1(d.chi_BR);
  c.T1_A = opt("T1_A") ? *opt("T1_A") : t1a;
  c.T1_B = opt("T1_B") ? *opt("T1_B") : t1b;
  if (auto* v = opt("gamma_up")) c.gamma_up = *v;
  if (derived_out) *derived_out = d;
  auto inst = build_cqed_instance(c, d, !error_channels);
  inst.params["Phi_BI"] = phi_BI;
  return inst;
}

inline ProtocolInstance build_instance(const RunConfig& c) {
  switch (c.protocol) {
    case ProtocolKind::kMinimalJump:
      return build_minimal_jump(c.get("kappa"));
    case ProtocolKind::kMinimalReservoir:
      if (c.has("Omega0") || c.has("Omega1"))
        return build_minimal_reservoir_legs(c.get_or("Omega0", c.get("Omega")), c.get_or("Omega1", c.get("Omega")),
                                            c.get("gamma"));
      return build_minimal_reservoir(c.get("Omega"), c.get("gamma"));
    case ProtocolKind::kCascaded: {
      const double kb = c.get("kappa_b"), g = c.get("gamma");
      return build_cascaded(c.get("lambda"), c.get("kappa_a"), kb, c.get_or("Omega", 0.5 * std::sqrt(kb * g)), g);
    }
    case ProtocolKind::kCqed: {
      if (c.has("Phi_BI")) return build_cqed_from_circuit(c.get("Phi_BI"), c.get("kappa"), c.error_channels, c.params);
      CqedRates r;
      r.chi_b = c.get("chi_b");
      r.Omega1 = c.get_or("Omega1", c.get("Omega"));
      r.Omega2 = c.get_or("Omega2", c.get("Omega"));
      r.kappa = c.get("kappa");
      r.delta1 = c.get_or("delta1", -0.5 * r.chi_b);
      r.delta2 = c.get_or("delta2", 0.5 * r.chi_b);
      r.chi_AR = c.get_or("chi_AR", 0.0);
      r.chi_AB = c.get_or("chi_AB", 0.0);
      r.ideal = !c.error_channels;
      r.T1_A = c.get_or("T1_A", 0.0);
      r.T1_B = c.get_or("T1_B", 0.0);
      r.gamma_up = c.get_or("gamma_up", r.kappa / 100.0);
      return build_cqed_from_rates(r);
    }
    case ProtocolKind::kBilinear:
      return build_bilinear(c.get("omega"), c.get("J"), c.get("g"), c.get("kappa"));
  }
  throw ConfigError("unknown protocol");
}

namespace run_detail {

inline void summarize_fidelity(ResultRecord& r, const std::vector<double>& f) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] > f[best]) best = i;
  r.set_scalar("final_fidelity", f.back());
  r.set_scalar("final_infidelity", 1.0 - f.back());
  r.set_scalar("best_fidelity", f[best]);
  r.set_scalar("best_time_us", r.times[best]);
}

// Fidelity to alpha t0 + beta e^{i phi} t1, maximised over phi; *phase gets
// the maximising phi (0 for a perfect transfer, 0 if alpha or beta vanishes).
inline double phase_corrected_fidelity(const Mat& rho, const Vec& t0, const Vec& t1, cplx alpha, cplx beta,
                                       double* phase = nullptr) {
  const double r00 = t0.dot(rho * t0).real(), r11 = t1.dot(rho * t1).real();
  const cplx r01 = t0.dot(rho * t1);
  if (phase) *phase = std::abs(alpha * beta) > 0.0 ? std::arg(std::conj(r01) * alpha * std::conj(beta)) : 0.0;
  return std::norm(alpha) * r00 + std::norm(beta) * r11 + 2.0 * std::abs(alpha) * std::abs(beta) * std::abs(r01);
}

inline void oracle_scalars(ResultRecord& r, const RunConfig& c, const ProtocolInstance& inst) {
  switch (c.protocol) {
    case ProtocolKind::kMinimalJump:
      r.set_scalar("oracle_final_fidelity", 1.0 - std::exp(-c.get("kappa") * c.t_max));
      break;
    case ProtocolKind::kMinimalReservoir:
      r.set_scalar("oracle_convergence_rate", convergence_rate(c.get("Omega"), c.get("gamma")));
      r.set_scalar("oracle_kappa_eff", kappa_eff(c.get("Omega"), c.get("gamma")));
      break;
    case ProtocolKind::kCascaded: {
      const double kb = c.get("kappa_b"), g = c.get("gamma");
      const double om = c.get_or("Omega", 0.5 * std::sqrt(kb * g));
      if (std::abs(4.0 * om * om / g - kb) <= 1e-9 * kb) {
        const auto ci = cascaded_infidelity(c.get("lambda"), c.get("kappa_a"), kb, g);
        r.set_scalar("oracle_infidelity_analytic", ci.analytic);
        r.set_scalar("oracle_infidelity_quadrature", ci.quadrature);
        r.set_scalar("oracle_infidelity_limit_large_gamma", ci.limit_large_gamma);
        r.metadata["damping_regime"] = to_string(classify_regime(kb, g));
      }
      break;
    }
    case ProtocolKind::kCqed: {
      const auto o = cqed_phase_and_infidelity(inst.params.at("chi_b"), inst.params.at("kappa"),
                                               inst.params.at("Omega1"));
      r.set_scalar("oracle_infidelity_raw", o.infidelity_raw);
      r.set_scalar("oracle_infidelity_corrected", o.infidelity_corrected);
      r.set_scalar("oracle_mean_phase", o.eta_avg);
      // Paths of |0> and |1> carry -/+ eta (delta1 = -chi/2), so |1> trails |0> by 2 eta.
      r.set_scalar("oracle_relative_phase", -2.0 * o.eta_avg);
      break;
    }
    case ProtocolKind::kBilinear:
      break;
  }
}

}  // namespace run_detail

// Single run. Deterministic given the config (including its seed); writes nothing.
inline ResultRecord run(const RunConfig& c, const IntegratorOptions& opt = {}) {
  const auto t_start = std::chrono::steady_clock::now();
  const ProtocolInstance inst = build_instance(c);
  const std::vector<double> grid = c.grid();
  const std::size_t n = grid.size();

  ResultRecord r;
  r.config = c.source;
  r.times = grid;
  r.provenance.seed = c.seed;
  r.warnings = inst.warnings;
  r.metadata["instance"] = inst.name;
  r.metadata["hilbert_dim"] = inst.layout()->total_dim();
  r.metadata["solver"] = to_string(c.solver);

  const Ket init = inst.encode(c.alpha, c.beta);
  const Ket tgt = inst.target(c.alpha, c.beta);
  std::vector<double> fid(n), trace(n);
  std::vector<std::vector<double>> pops(inst.positions.size(), std::vector<double>(n));

  switch (c.solver) {
    case SolverKind::kMaster: {
      const ReducedModel red = reduce_to_invariant_subspace(inst.model, {init.amplitudes()});
      r.metadata["reduced_dim"] = red.dim();
      const Vec t_r = red.reduce(tgt.amplitudes());
      std::vector<Mat> proj;
      for (const auto& p : inst.positions) proj.push_back(red.basis.adjoint() * p.projector().matrix() * red.basis);
      const Vec i_r = red.reduce(init.amplitudes());
      Mat last;
      evolve_master_observe(red.model, i_r * i_r.adjoint(), grid, opt, [&](std::size_t i, double, const Mat& rho) {
        fid[i] = t_r.dot(rho * t_r).real();
        trace[i] = rho.trace().real();
        for (std::size_t p = 0; p < proj.size(); ++p) pops[p][i] = (proj[p] * rho).trace().real();
        if (i + 1 == n) last = red.lift(rho);
        return true;
      });
      r.add_series("fidelity", fid);
      for (std::size_t p = 0; p < proj.size(); ++p) r.add_series("pop_" + inst.positions[p].label, pops[p]);
      r.add_series("trace", trace);
      run_detail::summarize_fidelity(r, fid);
      double phase = 0.0;
      const double fc = run_detail::phase_corrected_fidelity(last, inst.target_basis[0].amplitudes(),
                                                             inst.target_basis[1].amplitudes(), c.alpha, c.beta, &phase);
      r.set_scalar("phase_corrected_fidelity", fc);
      r.set_scalar("phase_corrected_infidelity", 1.0 - fc);
      r.set_scalar("final_relative_phase", phase);
      if (c.protocol == ProtocolKind::kMinimalJump) {
        // initial and target are orthogonal, so F(t) = 1 - e^{-kt}
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double p = std::exp(-c.get("kappa") * grid[i]);
          worst = std::max(worst, std::abs(fid[i] - (1.0 - p)));
        }
        r.set_scalar("oracle_max_fidelity_deviation", worst);
      }
      break;
    }
    case SolverKind::kNoJump: {
      const NoJumpRecord nj = evolve_no_jump(inst.model, init, grid, opt);
      std::vector<double> norm2(n), total(n);
      for (std::size_t i = 0; i < n; ++i) {
        const Vec& v = nj.kets[i].amplitudes();
        fid[i] = std::norm(tgt.amplitudes().dot(v));
        norm2[i] = v.squaredNorm();
        total[i] = nj.total_leak(i);
        for (std::size_t p = 0; p < inst.positions.size(); ++p)
          pops[p][i] = v.dot(inst.positions[p].projector().matrix() * v).real();
      }
      r.add_series("fidelity", fid);
      for (std::size_t p = 0; p < inst.positions.size(); ++p) r.add_series("pop_" + inst.positions[p].label, pops[p]);
      r.add_series("norm_squared", norm2);
      for (std::size_t k = 0; k < nj.channel_labels.size(); ++k) {
        r.add_series("leak_" + nj.channel_labels[k], nj.channel_leak[k]);
        r.set_scalar("final_leak_" + nj.channel_labels[k], nj.channel_leak[k].back());
      }
      r.add_series("leak_total", total);
      r.set_scalar("final_norm_squared", norm2.back());
      r.set_scalar("final_leak_total", total.back());
      run_detail::summarize_fidelity(r, fid);
      break;
    }
    case SolverKind::kTrajectories: {
      const auto avg = trajectory_average(inst.model, init, c.trajectories, grid, c.seed, c.threads, opt);
      const Vec& tv = tgt.amplitudes();
      for (std::size_t i = 0; i < n; ++i) {
        const Mat& rho = avg[i].matrix();
        fid[i] = tv.dot(rho * tv).real();
        trace[i] = rho.trace().real();
        for (std::size_t p = 0; p < inst.positions.size(); ++p)
          pops[p][i] = (inst.positions[p].projector().matrix() * rho).trace().real();
      }
      r.add_series("fidelity", fid);
      for (std::size_t p = 0; p < inst.positions.size(); ++p) r.add_series("pop_" + inst.positions[p].label, pops[p]);
      r.add_series("trace", trace);
      run_detail::summarize_fidelity(r, fid);
      r.metadata["trajectories"] = c.trajectories;
      break;
    }
  }
  run_detail::oracle_scalars(r, c, inst);
  json params = json::object();
  for (const auto& [k, v] : inst.params) params[k] = v;
  r.metadata["resolved_parameters"] = params;
  r.provenance.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return r;
}

}  // namespace aqst
