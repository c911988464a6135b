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


// Acceptance checks AC1..AC11. One PASS/FAIL line per criterion; exit status
// is the number of failed criteria (capped at 1).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aqst/aqst.hpp"

using namespace aqst;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
  return v;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a * std::pow(b / a, double(i) / double(n - 1));
  return v;
}

std::size_t hw_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int g_failures = 0;

void report(const char* id, bool pass, const std::string& detail) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <class F>
void guarded(const char* id, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

double sector_population(const Mat& rho, const PositionSector& s) {
  return (s.projector().matrix() * rho).trace().real();
}

// ---------------------------------------------------------------------- AC1
void ac1() {
  const double kappa = 1.0;
  const auto inst = build_minimal_jump(kappa);
  const double s = 1.0 / std::sqrt(2.0);
  const auto grid = linspace(0.0, 10.0 / kappa, 200);
  const auto t0 = Clock::now();
  const auto out = evolve_master(inst.model, DensityMatrix::from_ket(inst.encode(s, cplx(0.0, s))), grid);
  const double dt = seconds_since(t0);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, trace_distance(out[i], minimal_rho(grid[i], kappa, s, cplx(0.0, s))));
  report("AC1", worst <= 1e-8 && dt < 1.0, fmt("max trace distance %.3e (<= 1e-8), runtime %.3f s (< 1 s)", worst, dt));
}

// ---------------------------------------------------------------------- AC2
void ac2() {
  const double omega = 1.0, gamma = 50.0, keff = kappa_eff(omega, gamma);
  const double s = 1.0 / std::sqrt(2.0);
  const auto res = build_minimal_reservoir(omega, gamma);
  const auto jump = build_minimal_jump(keff);
  const auto grid = linspace(0.0, 10.0 / keff, 200);
  const auto a = evolve_master(res.model, DensityMatrix::from_ket(res.encode(s, s)), grid);
  const auto b = evolve_master(jump.model, DensityMatrix::from_ket(jump.encode(s, s)), grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, trace_distance(partial_trace_matrix(a[i], {"A", "B"}), b[i].matrix()));
  bool ok = worst <= 0.02;
  std::string detail = fmt("gamma/Omega=50 trace distance %.4f (<= 0.02); rates", worst);

  for (double r : {2.0, 4.0, 8.0, 50.0}) {
    const auto inst = build_minimal_reservoir(omega, r * omega);
    const double expect = convergence_rate(omega, r * omega);
    // Window scaled by the slower of gamma/2 and 4 Omega^2/gamma.
    const double scale = std::min(0.5 * r * omega, kappa_eff(omega, r * omega));
    const auto g = linspace(0.0, 12.0 / scale, 240);
    std::vector<double> pa;
    evolve_master_observe(inst.model, DensityMatrix::from_ket(inst.encode(1.0, 0.0)).matrix(), g, {},
                          [&](std::size_t, double, const Mat& rho) {
                            pa.push_back(sector_population(rho, inst.positions[0]));
                            return true;
                          });
    const double fitted = fit::slowest_decay_rate(fit::matrix_pencil(pa, g[1] - g[0], 3));
    const double rel = std::abs(fitted - expect) / expect;
    ok = ok && rel <= 0.02;
    detail += fmt(" [g/O=%g fit %.5f expect %.5f dev %.2f%%]", r, fitted, expect, 100 * rel);
  }
  report("AC2", ok, detail + " (each <= 2%)");
}

// ---------------------------------------------------------------------- AC3
void ac3() {
  const double ka = 1.0, kb = 1.0, gamma = 4.0, lam = 0.01 * ka;
  const auto inst = build_cascaded_matched(lam, ka, kb, gamma);
  const double s = 1.0 / std::sqrt(2.0);
  const Ket phi = cascaded_dark_state(inst, lam, ka, kb, gamma, s, s);
  const Vec& v = phi.amplitudes();
  const double wg = (inst.model.jump_sparse(0) * v).squaredNorm() + (inst.model.jump_sparse(1) * v).squaredNorm();
  const double lr = (inst.model.jump_sparse(2) * v).squaredNorm();
  const double ref = 4.0 * lam * lam / ka;
  const double rel = std::abs(lr - ref) / ref;
  report("AC3", wg <= 1e-6 * ref && rel <= 0.01,
         fmt("waveguide leak %.3e (<= %.3e); <Lr^dag Lr> %.6e vs 4 l^2/ka %.6e, dev %.3f%% (<= 1%%)", wg, 1e-6 * ref,
             lr, ref, 100 * rel));
}

// ---------------------------------------------------------------------- AC4
struct LeakRow {
  double numerical = 0, small_form = 0, large_form = 0;
  std::string selected;
};

LeakRow read_pinned(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open pinned regression data");
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  std::stringstream ss(line);
  std::string cell;
  std::vector<std::string> f;
  while (std::getline(ss, cell, ',')) f.push_back(cell);
  if (f.size() != 6) throw ConfigError(path + ": expected 6 columns");
  return {std::stod(f[2]), std::stod(f[3]), std::stod(f[4]), f[5]};
}

void ac4() {
  const double kb = 1.0, ka = 1.0, gamma = 50.0 * kb, lam = 0.02 * kb;
  const auto inst = build_cascaded_matched(lam, ka, kb, gamma);
  const double s = 1.0 / std::sqrt(2.0);
  // Emitter lifetime ~ ka / (4 lambda^2); integrate 25 of them.
  const double t_end = 25.0 * ka / (4.0 * lam * lam);
  const auto t0 = Clock::now();
  const auto rec = evolve_no_jump(inst.model, inst.encode(s, s), {0.0, t_end});
  const double dt = seconds_since(t0);
  LeakRow row;
  row.numerical = rec.leak("L0").back() + rec.leak("L1").back();
  const auto orc = cascaded_infidelity(lam, ka, kb, gamma);
  row.small_form = orc.limit_quarter;
  row.large_form = orc.limit_large_gamma;
  const double ds = std::abs(row.numerical - row.small_form) / row.small_form;
  const double dl = std::abs(row.numerical - row.large_form) / row.large_form;
  const bool ms = ds <= 0.05, ml = dl <= 0.05;
  row.selected = ms && !ml ? "small" : (ml && !ms ? "large" : "ambiguous");

  std::ostringstream csv;
  csv.imbue(std::locale::classic());
  csv.precision(10);
  csv << "lambda_over_kappa_b,gamma_over_kappa_b,numerical_leak,closed_form_small,closed_form_large,selected\n";
  csv << 0.02 << ',' << 50 << ',' << row.numerical << ',' << row.small_form << ',' << row.large_form << ','
      << row.selected << '\n';
  write_text("leak_arbitration.csv", csv.str());

  const LeakRow pin = read_pinned(std::string(AQST_TEST_DATA_DIR) + "/leak_arbitration.csv");
  const bool pinned = pin.selected == row.selected && std::abs(pin.numerical - row.numerical) <= 1e-6 * pin.numerical;
  report("AC4", (ms != ml) && pinned && dt < 10.0,
         fmt("no-jump leak %.5e; small form %.5e (dev %.1f%%), large form %.5e (dev %.1f%%); selected %s; "
             "pinned %s; analytic %.5e; runtime %.2f s (< 10 s)",
             row.numerical, row.small_form, 100 * ds, row.large_form, 100 * dl, row.selected.c_str(),
             pinned ? "match" : "MISMATCH", orc.analytic, dt));
}

// ---------------------------------------------------------------------- AC5
void ac5() {
  Fig2cOptions o;
  const double lt = 0.15;
  auto cell_at = [&](double g_over_kb) { return fig2c_cell(lt, 2.0 * std::sqrt(g_over_kb), o, 0); };
  const auto scan = logspace(0.25, 25.0, 25);
  std::vector<double> f(scan.size());
  parallel_for(scan.size(), hw_threads(), [&](std::size_t i) { f[i] = cell_at(scan[i]).fidelity; });
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] > f[best]) best = i;
  const double lo = std::log(scan[best == 0 ? 0 : best - 1]), hi = std::log(scan[std::min(best + 1, scan.size() - 1)]);
  const auto g = fit::golden_section_max([&](double x) { return cell_at(std::exp(x)).fidelity; }, lo, hi, 1e-3);
  const double peak = std::exp(g.x), want = 2.0 * std::sqrt(2.0) - 1.0;
  const bool loc = std::abs(peak - want) <= 0.2 * want;
  std::size_t above = 0;
  for (double x : f) above += x > 0.99;

  const auto t0 = Clock::now();
  Fig2cOptions full = Fig2cOptions::default_grid();
  full.threads = hw_threads();
  const auto sweep = sweep_fig2c(full);
  const double dt = seconds_since(t0);
  report("AC5", g.value > 0.99 && loc && dt < 1800.0,
         fmt("lambda/kb=0.15: peak F %.5f (> 0.99) at gamma/kb %.3f (target %.3f +/- 20%%); "
             "%zu of %zu scanned gamma/kb in [0.25, 25] exceed 0.99 (range ends: F %.4f, %.4f); "
             "20x20 sweep %.1f s on %zu threads (< 1800 s), %zu cells",
             g.value, peak, want, above, f.size(), f.front(), f.back(), dt, full.threads, sweep.cells.size()));
}

// ---------------------------------------------------------------------- AC6
void ac6() {
  const auto d = derive_static(table_circuit(0.0025));
  auto mhz = [](double x) { return x / kTwoPi; };
  auto within = [](double x, double ref) { return std::abs(x - ref) <= 0.05 * ref; };
  const double lo = mhz(derive_static(table_circuit(kTablePhiBILow)).chi_BR);
  const double hi = mhz(derive_static(table_circuit(kTablePhiBIHigh)).chi_BR);
  const bool ok = within(mhz(d.alpha[kModeA]), 78.0) && within(mhz(d.alpha[kModeR]), 210.0) &&
                  within(mhz(d.chi_AR), 4.0) && within(lo, 0.03) && within(hi, 0.82);
  report("AC6", ok,
         fmt("alpha_A %.2f (78), alpha_R %.2f (210), chi_AR %.3f (4.0), chi_BR endpoints %.4f (0.03, dev %.1f%%) "
             "and %.4f (0.82, dev %.1f%%) MHz/2pi; tolerance 5%%",
             mhz(d.alpha[kModeA]), mhz(d.alpha[kModeR]), mhz(d.chi_AR), lo, 100 * std::abs(lo - 0.03) / 0.03, hi,
             100 * std::abs(hi - 0.82) / 0.82));
}

// ---------------------------------------------------------------------- AC7
void ac7() {
  InsetOptions o;
  o.threads = hw_threads();
  const auto r = sweep_fig3c_inset(o);
  double worst_raw = 0, worst_corr = 0, worst_omega = 0;
  const std::size_t nx = o.chi_over_kappa.size();
  for (std::size_t k = 0; k < r.points.size(); ++k) {
    const auto& p = r.points[k];
    worst_raw = std::max(worst_raw, std::abs(p.infidelity - p.oracle_raw) / p.oracle_raw);
    worst_corr = std::max(worst_corr, std::abs(p.corrected_infidelity - p.oracle_corrected) / p.oracle_corrected);
    const auto& q = r.points[k % nx];  // same chi, first Omega
    worst_omega = std::max(worst_omega, std::abs(p.infidelity - q.infidelity) / q.infidelity);
  }
  bool slopes = true;
  std::string sl;
  for (const auto& f : r.fits) {
    slopes = slopes && std::abs(f.fit.slope + 2.0) <= 0.1;
    sl += fmt(" %.3f", f.fit.slope);
  }
  report("AC7", worst_raw <= 0.10 && worst_corr <= 0.15 && worst_omega <= 0.10 && slopes,
         fmt("max dev from chi^2/2k^2 %.1f%% (<= 10%%); corrected vs chi^2/4k^2 %.1f%% (<= 15%%); "
             "Omega spread %.2f%% (<= 10%%); fitted exponents",
             100 * worst_raw, 100 * worst_corr, 100 * worst_omega) + sl + " (-2 +/- 0.1)");
}

// ---------------------------------------------------------------------- AC8
void ac8() {
  Fig3cOptions o = Fig3cOptions::default_auto();
  std::string detail;
  std::size_t in_band = 0;
  bool low_end = false, high_end = false, fast = true;
  for (std::size_t i = 0; i < o.phi_BI.size(); ++i) {
    Fig3cOptions one = o;
    one.phi_BI = {o.phi_BI[i]};
    const auto t0 = Clock::now();
    const auto res = sweep_fig3c(one);
    const double dt = seconds_since(t0);
    const auto& c = res.curves.front();
    const bool ok = c.result.best_avg_fidelity >= 0.87 && c.result.best_avg_fidelity <= 0.95 &&
                    c.result.best_time <= 10.0 + 1e-9;
    fast = fast && dt < 60.0;
    in_band += ok;
    if (ok && i == 0) low_end = true;
    if (ok && i + 1 == o.phi_BI.size()) high_end = true;
    detail += fmt(" [chi_BR %.3f MHz/2pi, kappa %.2f MHz/2pi: F %.4f at %.2f us, %.1f s]", c.set.chi_b / kTwoPi,
                  c.set.kappa / kTwoPi, c.result.best_avg_fidelity, c.result.best_time, dt);
  }
  report("AC8", in_band >= 3 && low_end && high_end && fast,
         fmt("%zu of %zu sets in [0.87, 0.95], range ends covered: %s;", in_band, o.phi_BI.size(),
             low_end && high_end ? "yes" : "no") + detail);
}

// ---------------------------------------------------------------------- AC9
void ac9() {
  const double omega = 100.0, J = 1.0, g = 0.02 * J, kappa = 4.0 * g;
  const auto inst = build_bilinear(omega, J, g, kappa);
  const Mat T = cyclic_permutation_operator(inst.layout()).matrix();
  const Mat& H = inst.model.hamiltonian().matrix();
  const Mat& L = inst.model.jumps()[0].op.matrix();
  const double cH = operator_norm(T * H - H * T), cL = operator_norm(T * L - L * T);
  using namespace bilinear;
  const auto& l = inst.layout();
  const double aL = (L * Ket::normalized(l, product(ggg(), L1())).amplitudes()).norm();
  const double aR = (L * Ket::normalized(l, product(ggg(), R1())).amplitudes()).norm();
  const Vec out = L * inst.aux("R2_B").amplitudes();
  const Vec r1 = Ket::normalized(l, product(ggg(), R1())).amplitudes();
  const double map_err = 1.0 - std::abs(r1.dot(out)) / out.norm();
  const bool structure = cH <= 1e-12 && cL <= 1e-12 && aL <= 1e-12 && aR <= 1e-12 && map_err <= 1e-12;

  // Fidelity against the dressed dark targets (the stationary states of the
  // model), at t = 20 / (4 g^2 / kappa).
  const double t_end = 20.0 / (4.0 * g * g / kappa);
  const double s = 1.0 / std::sqrt(2.0);
  auto final_fidelity = [&](cplx a, cplx b) {
    const Vec init = inst.encode(a, b).amplitudes();
    const Vec tgt =
        Ket::normalized(l, a * inst.dark_targets[0].amplitudes() + b * inst.dark_targets[1].amplitudes()).amplitudes();
    return fidelity_until_plateau(inst.model, init, tgt, t_end, 400, 0.0).fidelity.back();
  };
  const double f0 = final_fidelity(1.0, 0.0), f1 = final_fidelity(0.0, 1.0), fx = final_fidelity(s, s);
  report("AC9", structure && fx >= 0.99,
         fmt("||[H,T]|| %.1e, ||[L,T]|| %.1e, |L L1| %.1e, |L R1| %.1e, R2->R1 defect %.1e (all <= 1e-12); "
             "g/J=0.02, kappa=4g, t=%.0f/J: equator fidelity %.4f (>= 0.99); basis transfer |0> %.4f, |1> %.4f "
             "(degenerate dark partners bound these by 1/5 and 4/5)",
             cH, cL, aL, aR, map_err, t_end, fx, f0, f1));
}

// --------------------------------------------------------------------- AC10
void ac10() {
  const std::size_t N = 2000;
  const double bound = 3.0 / std::sqrt(double(N));
  const double s = 1.0 / std::sqrt(2.0);
  const unsigned th = unsigned(hw_threads());

  const auto mj = build_minimal_jump(1.0);
  const auto g1 = linspace(0.0, 5.0, 21);
  const Ket k1 = mj.encode(s, s);
  const auto ref1 = evolve_master(mj.model, DensityMatrix::from_ket(k1), g1);
  const auto avg1 = trajectory_average(mj.model, k1, N, g1, 1234, th);
  double d1 = 0;
  for (std::size_t i = 0; i < g1.size(); ++i) d1 = std::max(d1, trace_distance(ref1[i], avg1[i]));
  const auto again = trajectory_average(mj.model, k1, N, g1, 1234, 1);
  bool same = true;
  for (std::size_t i = 0; i < g1.size(); ++i) same = same && again[i].matrix() == avg1[i].matrix();

  auto rates = CqedRates::ideal_model(0.1 * kTwoPi, 0.15 * kTwoPi, 1.0 * kTwoPi);
  rates.ideal = false;
  rates.T1_A = 30.0;
  rates.T1_B = 200.0;
  rates.gamma_up = rates.kappa / 100.0;
  const auto cq = build_cqed_from_rates(rates);
  const auto g2 = linspace(0.0, 8.0, 17);
  const Ket k2 = cq.encode(s, s);
  const auto ref2 = evolve_master(cq.model, DensityMatrix::from_ket(k2), g2);
  const auto avg2 = trajectory_average(cq.model, k2, N, g2, 99, th);
  double d2 = 0;
  for (std::size_t i = 0; i < g2.size(); ++i) d2 = std::max(d2, trace_distance(ref2[i], avg2[i]));

  report("AC10", d1 <= bound && d2 <= bound && same,
         fmt("N=%zu: max trace distance minimal %.4f, cQED %.4f (<= %.4f); same seed reproduces (1 vs %u threads): %s",
             N, d1, d2, bound, th, same ? "yes" : "no"));
}

// --------------------------------------------------------------------- AC11
void ac11() {
  std::vector<ProtocolInstance> ps;
  ps.push_back(build_minimal_jump(1.0));
  ps.push_back(build_minimal_reservoir(0.5, 4.0));
  ps.push_back(build_cascaded_matched(0.05, 1.0, 1.0, 2.0));
  ps.push_back(build_cqed_from_rates(CqedRates::ideal_model(0.1, 0.2, 2.0)));
  ps.push_back(build_bilinear(100.0, 1.0, 0.02, 0.5));
  bool ok = true;
  std::string detail;
  for (const auto& p : ps) {
    const bool tgt = check_dark_manifold(p.model, p.dark_targets, 1e-10).verdict;
    const bool ini = check_dark_manifold(p.model, {p.initial_basis[0], p.initial_basis[1]}, 1e-10).verdict;
    const double ov = check_logical_orthogonality(p, linspace(0.0, 20.0, 81)).max();
    ok = ok && tgt && !ini && ov <= 1e-8;
    detail += fmt(" [%s: targets %s, initial %s, overlap %.2e]", p.name.c_str(), tgt ? "dark" : "NOT dark",
                  ini ? "DARK" : "not dark", ov);
  }
  const auto ctl = build_minimal_reservoir_legs(1.0, 0.3, 4.0);
  const double oc = check_logical_orthogonality(ctl, linspace(0.0, 20.0, 81)).max();
  ok = ok && oc > 1e-3;
  report("AC11", ok, fmt("overlap bound 1e-8; unequal-legs control overlap %.3e (> 1e-3);", oc) + detail);
}

}  // namespace

int main() {
  std::printf("aqst %s acceptance\n", kVersion);
  guarded("AC1", ac1);
  guarded("AC2", ac2);
  guarded("AC3", ac3);
  guarded("AC4", ac4);
  guarded("AC5", ac5);
  guarded("AC6", ac6);
  guarded("AC7", ac7);
  guarded("AC8", ac8);
  guarded("AC9", ac9);
  guarded("AC10", ac10);
  guarded("AC11", ac11);
  std::printf("%d of 11 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
