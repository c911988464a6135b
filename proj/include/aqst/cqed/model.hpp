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

#include "aqst/core/algebra.hpp"
#include "aqst/cqed/circuit.hpp"
#include "aqst/protocols/instance.hpp"

namespace aqst {

// Rates for the 12-state rotating-frame model, rad/us.
struct CqedRates {
  double chi_b = 0.0;
  double Omega1 = 0.0, Omega2 = 0.0;
  double kappa = 1.0;
  double delta1 = 0.0, delta2 = 0.0;
  double chi_AR = 0.0, chi_AB = 0.0;
  bool ideal = true;
  double T1_A = 0.0, T1_B = 0.0;  // us; <= 0 disables the channel
  double gamma_up = 0.0;

  static CqedRates ideal_model(double chi_b, double Omega, double kappa) {
    CqedRates r;
    r.chi_b = chi_b;
    r.Omega1 = r.Omega2 = Omega;
    r.kappa = kappa;
    r.delta1 = -0.5 * chi_b;
    r.delta2 = 0.5 * chi_b;
    return r;
  }
};

// Layout [A:3 (g,e,f), B:2 (g,e), R:2 (g,e)], flat index a*4 + b*2 + r.
//   |0>_A = |eg,g>, |1>_A = |fg,g>      intermediates |ge,e>, |gg,e>
//   |0>_B = |ge,g>, |1>_B = |gg,g> = |vac>_B
// H = d1 |ge,e><ge,e| + d2 |gg,e><gg,e| + O1 (|ge,e><eg,g| + h.c.) + O2 (|gg,e><fg,g| + h.c.)
//     + diagonal residual shifts on the six non-computational states.
inline ProtocolInstance build_cqed_from_rates(const CqedRates& r) {
  if (!(r.kappa > 0.0)) throw ConfigError("cqed: kappa must be > 0");
  auto l = make_layout({{"A", 3}, {"B", 2}, {"R", 2}});
  auto idx = [&](std::size_t a, std::size_t b, std::size_t rr) { return Eigen::Index(l->index({a, b, rr})); };
  enum { g = 0, e = 1, f = 2 };

  Mat H = Mat::Zero(12, 12);
  H(idx(g, e, 1), idx(g, e, 1)) = r.delta1;
  H(idx(g, g, 1), idx(g, g, 1)) = r.delta2;
  H(idx(g, e, 1), idx(e, g, 0)) = H(idx(e, g, 0), idx(g, e, 1)) = r.Omega1;
  H(idx(g, g, 1), idx(f, g, 0)) = H(idx(f, g, 0), idx(g, g, 1)) = r.Omega2;
  const double c = r.chi_b, cAR = r.chi_AR, cAB = r.chi_AB;
  H(idx(e, g, 1), idx(e, g, 1)) = 0.5 * c - cAR;
  H(idx(f, g, 1), idx(f, g, 1)) = 0.5 * c - 2.0 * cAR;
  H(idx(e, e, 0), idx(e, e, 0)) = -cAB;
  H(idx(f, e, 0), idx(f, e, 0)) = -2.0 * cAB;
  H(idx(e, e, 1), idx(e, e, 1)) = -cAB - cAR - 0.5 * c;
  H(idx(f, e, 1), idx(f, e, 1)) = -2.0 * cAB - 2.0 * cAR - 0.5 * c;

  std::vector<JumpChannel> jumps;
  jumps.push_back({"R", std::sqrt(r.kappa) * embed(local::sigma_minus(), "R", l)});
  if (!r.ideal) {
    if (r.T1_A > 0.0) jumps.push_back({"A", std::sqrt(1.0 / r.T1_A) * embed(local::lowering(3), "A", l)});
    if (r.T1_B > 0.0) jumps.push_back({"B", std::sqrt(1.0 / r.T1_B) * embed(local::sigma_minus(), "B", l)});
    if (r.gamma_up > 0.0) jumps.push_back({"R_up", std::sqrt(r.gamma_up) * embed(local::sigma_plus(), "R", l)});
  }
  LindbladModel model(Operator(l, H), std::move(jumps));

  auto k = [&](std::size_t a, std::size_t b, std::size_t rr) { return Ket::basis(l, {a, b, rr}); };
  ProtocolInstance p{r.ideal ? "cqed_ideal" : "cqed",
                     std::move(model),
                     {k(e, g, 0), k(f, g, 0)},
                     {k(g, e, 0), k(g, g, 0)},
                     {k(g, e, 0), k(g, g, 0)},
                     {{"intermediate0", k(g, e, 1)}, {"intermediate1", k(g, g, 1)}},
                     {{"A", {k(e, g, 0), k(f, g, 0)}}, {"e", {k(g, e, 1), k(g, g, 1)}}, {"B", {k(g, e, 0), k(g, g, 0)}}},
                     {{"chi_b", r.chi_b},
                      {"Omega1", r.Omega1},
                      {"Omega2", r.Omega2},
                      {"kappa", r.kappa},
                      {"delta1", r.delta1},
                      {"delta2", r.delta2},
                      {"chi_AR", r.chi_AR},
                      {"chi_AB", r.chi_AB},
                      {"T1_A", r.T1_A},
                      {"T1_B", r.T1_B},
                      {"gamma_up", r.gamma_up}},
                     {}};
  if (r.chi_b >= r.kappa) p.warnings.push_back("chi_b >= kappa: outside the weak-dispersive regime");
  if (std::max(r.Omega1, r.Omega2) > 0.2 * r.kappa) p.warnings.push_back("Omega/kappa > 0.2");
  validate_instance(p);
  return p;
}

inline ProtocolInstance build_cqed_instance(const CircuitParams& circuit, const DerivedCqedParams& d, bool ideal) {
  auto warn = circuit.validate();
  CqedRates r;
  r.chi_b = d.chi_BR;
  r.Omega1 = d.Omega1;
  r.Omega2 = d.Omega2;
  r.kappa = circuit.kappa;
  r.delta1 = d.delta1;
  r.delta2 = d.delta2;
  r.chi_AR = d.chi_AR;
  r.chi_AB = d.chi_AB;
  r.ideal = ideal;
  r.T1_A = circuit.T1_A;
  r.T1_B = circuit.T1_B;
  r.gamma_up = circuit.effective_gamma_up();
  auto p = build_cqed_from_rates(r);
  p.warnings.insert(p.warnings.end(), warn.begin(), warn.end());
  return p;
}

}  // namespace aqst
