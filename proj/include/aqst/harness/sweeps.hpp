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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "aqst/cqed/cardinal.hpp"
#include "aqst/dynamics/propagator.hpp"
#include "aqst/dynamics/random.hpp"
#include "aqst/dynamics/subspace.hpp"
#include "aqst/harness/fit.hpp"
#include "aqst/harness/run.hpp"
#include "aqst/oracles/cascaded.hpp"
#include "aqst/oracles/cqed.hpp"
#include "aqst/protocols/cascaded.hpp"

namespace aqst {

// Runs job(i) for i in [0, n) on up to `threads` workers. Results must be
// written by index, which keeps aggregation independent of scheduling.
template <class Job>
void parallel_for(std::size_t n, std::size_t threads, Job&& job) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// Fidelity along a uniform grid with early stop once |F_i - F_{i-w}| < rel |F_i|,
// w = 10% of the grid.
struct PlateauTrace {
  std::vector<double> times, fidelity;
  bool plateau = false;
};

inline PlateauTrace fidelity_until_plateau(const LindbladModel& model, const Vec& init, const Vec& target,
                                           double t_max, std::size_t points, double rel,
                                           const IntegratorOptions& opt = {}) {
  const ReducedModel red = reduce_to_invariant_subspace(model, {init});
  const Vec i_r = red.reduce(init), t_r = red.reduce(target);
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) grid[i] = t_max * double(i) / double(points - 1);
  const std::size_t w = std::max<std::size_t>(1, points / 10);
  PlateauTrace tr;
  const auto method = red.dim() <= kMaxPropagatorDim ? MasterMethod::kPropagator : MasterMethod::kAdaptive;
  evolve_master_with(method, red.model, i_r * i_r.adjoint(), grid, opt, [&](std::size_t i, double t, const Mat& rho) {
    const double f = t_r.dot(rho * t_r).real();
    tr.times.push_back(t);
    tr.fidelity.push_back(f);
    if (i >= w && std::abs(f - tr.fidelity[i - w]) < rel * std::abs(f)) {
      tr.plateau = true;
      return false;
    }
    return true;
  });
  return tr;
}

// ------------------------------------------- cascaded (lambda, gamma) sweep

struct Fig2cOptions {
  std::vector<double> lambda_over_kappa_b;
  std::vector<double> gamma_over_omega;
  double kappa_b = 1.0;  // sets the unit; ka = kb, kb = 4 Omega^2 / gamma
  double t_max_factor = 20.0;
  std::size_t grid_points = 400;
  double plateau_rel = 1e-6;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  cplx alpha = 1.0 / std::sqrt(2.0), beta = 1.0 / std::sqrt(2.0);

  static Fig2cOptions default_grid() {
    Fig2cOptions o;
    for (int i = 0; i < 20; ++i) {
      o.lambda_over_kappa_b.push_back(0.01 * std::pow(30.0, i / 19.0));  // 0.01 .. 0.3
      o.gamma_over_omega.push_back(std::pow(10.0, i / 19.0));           // 1 .. 10
    }
    return o;
  }
};

struct Fig2cCell {
  double lambda_over_kappa_b = 0, gamma_over_omega = 0, gamma_over_kappa_b = 0;
  double lambda = 0, Omega = 0, gamma = 0, kappa_a = 0, kappa_b = 0;
  double fidelity = 0, t_stop = 0, t_max = 0;
  bool plateau = false;
  double oracle_infidelity = 0;
  std::string regime;
  std::uint64_t seed = 0;
};

struct Fig2cResult {
  Fig2cOptions options;
  std::vector<Fig2cCell> cells;  // row-major: lambda index outer, gamma/Omega inner
  const Fig2cCell& at(std::size_t i, std::size_t j) const { return cells[i * options.gamma_over_omega.size() + j]; }
};

inline Fig2cCell fig2c_cell(double lt, double r, const Fig2cOptions& o, std::uint64_t seed) {
  if (!(lt > 0.0 && r > 0.0)) throw ConfigError("sweep_fig2c: grid values must be positive");
  Fig2cCell c;
  c.lambda_over_kappa_b = lt;
  c.gamma_over_omega = r;
  c.gamma_over_kappa_b = r * r / 4.0;
  c.kappa_b = c.kappa_a = o.kappa_b;
  c.Omega = r * o.kappa_b / 4.0;
  c.gamma = r * r * o.kappa_b / 4.0;
  c.lambda = lt * o.kappa_b;
  c.seed = seed;
  const auto inst = build_cascaded(c.lambda, c.kappa_a, c.kappa_b, c.Omega, c.gamma);
  const double s = c.kappa_b + c.gamma;
  const cplx D = std::sqrt(cplx(s * s - 8.0 * c.gamma * c.kappa_b, 0.0));
  const double kp = (0.25 * (s - D)).real();
  const double slowest =
      std::min({4.0 * c.lambda * c.lambda / c.kappa_a, 0.5 * c.kappa_a, c.kappa_b, c.gamma, kp});
  c.t_max = o.t_max_factor / slowest;
  const auto tr = fidelity_until_plateau(inst.model, inst.encode(o.alpha, o.beta).amplitudes(),
                                         inst.target(o.alpha, o.beta).amplitudes(), c.t_max, o.grid_points,
                                         o.plateau_rel);
  c.fidelity = tr.fidelity.back();
  c.t_stop = tr.times.back();
  c.plateau = tr.plateau;
  c.regime = to_string(classify_regime(c.kappa_b, c.gamma));
  c.oracle_infidelity = cascaded_infidelity(c.lambda, c.kappa_a, c.kappa_b, c.gamma).analytic;
  return c;
}

inline Fig2cResult sweep_fig2c(const Fig2cOptions& o) {
  Fig2cResult res;
  res.options = o;
  const std::size_t nl = o.lambda_over_kappa_b.size(), ng = o.gamma_over_omega.size();
  res.cells.resize(nl * ng);
  parallel_for(nl * ng, o.threads, [&](std::size_t k) {
    res.cells[k] = fig2c_cell(o.lambda_over_kappa_b[k / ng], o.gamma_over_omega[k % ng], o, derive_seed(o.seed, k));
  });
  return res;
}

// ------------------------------------------------- cQED parameter-set sweep

struct CqedSet {
  std::string label;
  double phi_BI = std::numeric_limits<double>::quiet_NaN();  // NaN for explicit rate sets
  double chi_b = 0, Omega = 0, kappa = 0;
  double chi_AR = 0, chi_AB = 0;
  double T1_A = 0, T1_B = 0, gamma_up = -1;  // gamma_up < 0: kappa / 100
};

struct Fig3cOptions {
  std::vector<double> phi_BI;  // auto mode
  std::vector<CqedSet> sets;   // explicit mode (used when phi_BI is empty)
  double t_max = 10.0;         // us
  std::size_t grid_points = 201;
  bool error_channels = true;
  double kappa_lo = kTwoPi * 0.2, kappa_hi = kTwoPi * 20.0;  // golden-section bracket, rad/us
  double kappa_rel_tol = 0.01;
  std::size_t threads = 1;

  static Fig3cOptions default_auto() {
    Fig3cOptions o;
    for (int i = 0; i < 5; ++i)
      o.phi_BI.push_back(kTablePhiBILow + (kTablePhiBIHigh - kTablePhiBILow) * i / 4.0);
    return o;
  }
};

struct Fig3cCurve {
  CqedSet set;
  CardinalResult result;
  int kappa_evaluations = 0;
  std::vector<std::string> warnings;
};

struct Fig3cResult {
  Fig3cOptions options;
  std::vector<double> times;
  std::vector<Fig3cCurve> curves;
};

inline std::vector<double> uniform_grid(double t_max, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = t_max * double(i) / double(n - 1);
  return g;
}

inline ProtocolInstance build_cqed_set(const CqedSet& s, bool error_channels) {
  CqedRates r;
  r.chi_b = s.chi_b;
  r.Omega1 = r.Omega2 = s.Omega;
  r.kappa = s.kappa;
  r.delta1 = -0.5 * s.chi_b;
  r.delta2 = 0.5 * s.chi_b;
  r.chi_AR = s.chi_AR;
  r.chi_AB = s.chi_AB;
  r.ideal = !error_channels;
  r.T1_A = s.T1_A;
  r.T1_B = s.T1_B;
  r.gamma_up = s.gamma_up < 0.0 ? s.kappa / 100.0 : s.gamma_up;
  return build_cqed_from_rates(r);
}

// Reference circuit at phi_BI with drives at the xi caps and loaded T1 from
// the tabulated range; kappa left to the caller.
inline CqedSet cqed_set_from_circuit(double phi_BI, double kappa) {
  DerivedCqedParams d;
  const auto inst = build_cqed_from_circuit(phi_BI, kappa, true, {}, &d);
  CqedSet s;
  s.phi_BI = phi_BI;
  s.chi_b = d.chi_BR;
  s.Omega = d.Omega1;
  s.kappa = kappa;
  s.chi_AR = d.chi_AR;
  s.chi_AB = d.chi_AB;
  s.T1_A = inst.params.at("T1_A");
  s.T1_B = inst.params.at("T1_B");
  s.gamma_up = kappa / 100.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "Phi_BI=%.4f", phi_BI);
  s.label = buf;
  return s;
}

inline Fig3cCurve fig3c_curve(CqedSet set, const Fig3cOptions& o, const std::vector<double>& grid, bool optimize) {
  Fig3cCurve c;
  if (optimize) {
    auto objective = [&](double log_kappa) {
      CqedSet s = set;
      s.kappa = std::exp(log_kappa);
      s.gamma_up = s.kappa / 100.0;
      return cardinal_average_fidelity(build_cqed_set(s, o.error_channels), grid, {}, MasterMethod::kPropagator)
          .best_avg_fidelity;
    };
    const auto g = fit::golden_section_max(objective, std::log(o.kappa_lo), std::log(o.kappa_hi),
                                           std::log1p(o.kappa_rel_tol));
    set.kappa = std::exp(g.x);
    set.gamma_up = set.kappa / 100.0;
    c.kappa_evaluations = g.evaluations;
    if (g.x - std::log(o.kappa_lo) < 0.05 || std::log(o.kappa_hi) - g.x < 0.05)
      c.warnings.push_back(set.label + ": optimal kappa at the edge of the search bracket");
  }
  const auto inst = build_cqed_set(set, o.error_channels);
  c.warnings.insert(c.warnings.end(), inst.warnings.begin(), inst.warnings.end());
  c.result = cardinal_average_fidelity(inst, grid, {}, MasterMethod::kPropagator);
  c.set = set;
  return c;
}

inline Fig3cResult sweep_fig3c(const Fig3cOptions& o) {
  Fig3cResult res;
  res.options = o;
  res.times = uniform_grid(o.t_max, o.grid_points);
  const bool auto_mode = !o.phi_BI.empty();
  const std::size_t n = auto_mode ? o.phi_BI.size() : o.sets.size();
  res.curves.resize(n);
  parallel_for(n, o.threads, [&](std::size_t k) {
    if (auto_mode)
      res.curves[k] = fig3c_curve(cqed_set_from_circuit(o.phi_BI[k], o.kappa_lo), o, res.times, true);
    else
      res.curves[k] = fig3c_curve(o.sets[k], o, res.times, false);
  });
  return res;
}

// ----------------------------------------------- ideal cQED scaling (inset)

struct InsetOptions {
  std::vector<double> chi_over_kappa{0.05, 0.075, 0.1, 0.15, 0.2, 0.3};
  std::vector<double> omega_over_kappa{0.05, 0.2};
  double kappa = 1.0;
  double t_factor = 40.0;  // t_max = t_factor / (4 Omega^2 / kappa)
  std::size_t grid_points = 400;
  double plateau_rel = 1e-9;
  std::size_t threads = 1;
};

struct InsetPoint {
  double chi_over_kappa = 0, omega_over_kappa = 0;
  double infidelity = 0, corrected_infidelity = 0, mean_phase = 0;
  double oracle_raw = 0, oracle_corrected = 0;
  double t_final = 0;
};

struct InsetFit {
  double omega_over_kappa = 0;
  fit::LinearFit fit;  // log(infidelity) vs log(kappa / chi)
  double prefactor = 0;
};

struct InsetResult {
  InsetOptions options;
  std::vector<InsetPoint> points;  // omega outer, chi inner
  std::vector<InsetFit> fits;      // one per omega
};

inline InsetPoint inset_point(double x, double w, const InsetOptions& o) {
  InsetPoint p;
  p.chi_over_kappa = x;
  p.omega_over_kappa = w;
  const double kappa = o.kappa, chi = x * kappa, om = w * kappa;
  const auto inst = build_cqed_from_rates(CqedRates::ideal_model(chi, om, kappa));
  const double s = 1.0 / std::sqrt(2.0);
  const Vec init = inst.encode(s, s).amplitudes();
  const double t_max = o.t_factor * kappa / (4.0 * om * om);
  const ReducedModel red = reduce_to_invariant_subspace(inst.model, {init});
  const Vec i_r = red.reduce(init), t_r = red.reduce(inst.target(s, s).amplitudes());
  const Vec b0 = red.reduce(inst.target_basis[0].amplitudes()), b1 = red.reduce(inst.target_basis[1].amplitudes());
  Mat last;
  std::vector<double> f;
  const std::size_t w10 = std::max<std::size_t>(1, o.grid_points / 10);
  evolve_master_propagator_observe(red.model, i_r * i_r.adjoint(), uniform_grid(t_max, o.grid_points),
                                   [&](std::size_t i, double t, const Mat& rho) {
                                     f.push_back(t_r.dot(rho * t_r).real());
                                     last = rho;
                                     p.t_final = t;
                                     return !(i >= w10 && std::abs(f[i] - f[i - w10]) < o.plateau_rel * f[i]);
                                   });
  p.infidelity = 1.0 - f.back();
  p.corrected_infidelity = 1.0 - run_detail::phase_corrected_fidelity(last, b0, b1, s, s, &p.mean_phase);
  const auto orc = cqed_phase_and_infidelity(chi, kappa, om);
  p.oracle_raw = orc.infidelity_raw;
  p.oracle_corrected = orc.infidelity_corrected;
  return p;
}

inline InsetResult sweep_fig3c_inset(const InsetOptions& o) {
  InsetResult res;
  res.options = o;
  const std::size_t nx = o.chi_over_kappa.size(), nw = o.omega_over_kappa.size();
  res.points.resize(nx * nw);
  parallel_for(nx * nw, o.threads, [&](std::size_t k) {
    res.points[k] = inset_point(o.chi_over_kappa[k % nx], o.omega_over_kappa[k / nx], o);
  });
  for (std::size_t j = 0; j < nw; ++j) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < nx; ++i) {
      x.push_back(1.0 / res.points[j * nx + i].chi_over_kappa);
      y.push_back(res.points[j * nx + i].infidelity);
    }
    InsetFit f;
    f.omega_over_kappa = o.omega_over_kappa[j];
    f.fit = fit::log_log(x, y);
    f.prefactor = std::exp(f.fit.intercept);
    res.fits.push_back(f);
  }
  return res;
}

}  // namespace aqst
