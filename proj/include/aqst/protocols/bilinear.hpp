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

#include <array>
#include <cmath>
#include <numbers>

#include "aqst/core/algebra.hpp"
#include "aqst/protocols/instance.hpp"

namespace aqst {

namespace bilinear {

inline const std::vector<std::string>& labels() {
  static const std::vector<std::string> l{"A1", "A2", "A3", "B1", "B2", "B3"};
  return l;
}

inline cplx w() { return std::polar(1.0, 2.0 * std::numbers::pi / 3.0); }

// Three-atom kets, index = x1*4 + x2*2 + x3 with 0 = g, 1 = e.
inline Vec ggg() {
  Vec v = Vec::Zero(8);
  v(0) = 1.0;
  return v;
}

// One excitation with coefficients c on egg, geg, gge, normalized by 1/sqrt(3).
inline Vec one_excitation(cplx c_egg, cplx c_geg, cplx c_gge) {
  Vec v = Vec::Zero(8);
  v(4) = c_egg;
  v(2) = c_geg;
  v(1) = c_gge;
  return v / std::sqrt(3.0);
}
// Two excitations with coefficients on gee, ege, eeg.
inline Vec two_excitation(cplx c_gee, cplx c_ege, cplx c_eeg) {
  Vec v = Vec::Zero(8);
  v(3) = c_gee;
  v(5) = c_ege;
  v(6) = c_eeg;
  return v / std::sqrt(3.0);
}

inline Vec S1() { return one_excitation(1.0, 1.0, 1.0); }
inline Vec L1() { return one_excitation(1.0, w(), std::conj(w())); }
inline Vec R1() { return one_excitation(1.0, std::conj(w()), w()); }
inline Vec S2() { return two_excitation(1.0, 1.0, 1.0); }
inline Vec L2() { return two_excitation(1.0, w(), std::conj(w())); }
inline Vec R2() { return two_excitation(1.0, std::conj(w()), w()); }

inline Vec product(const Vec& a, const Vec& b) { return Eigen::kroneckerProduct(a, b).eval(); }

}  // namespace bilinear

inline void require_six_qubits(const LayoutPtr& l) {
  if (l->labels() != bilinear::labels())
    throw LayoutError("expected six-qubit layout [A1,A2,A3,B1,B2,B3]");
  for (const auto& m : l->modes())
    if (m.dim != 2) throw LayoutError("mode '" + m.label + "' must be a qubit");
}

// T|x1 x2 x3>_A |y1 y2 y3>_B = |x2 x3 x1>_A |y2 y3 y1>_B.
inline Operator cyclic_permutation_operator(const LayoutPtr& l) {
  require_six_qubits(l);
  Mat T = Mat::Zero(64, 64);
  for (std::size_t f = 0; f < 64; ++f) {
    const auto d = l->digits(f);
    const std::vector<std::size_t> p{d[1], d[2], d[0], d[4], d[5], d[3]};
    T(Eigen::Index(l->index(p)), Eigen::Index(f)) = 1.0;
  }
  return Operator(l, std::move(T));
}

// Frame rotating at omega, so the sigma_z terms drop out. Keeps every
// g-coupling term, including the off-resonant path to |R2(L2)>_A|ggg>_B.
inline ProtocolInstance build_bilinear(double omega, double J, double g, double kappa) {
  if (!(omega > 0.0 && J > 0.0 && g >= 0.0 && kappa > 0.0))
    throw ConfigError("build_bilinear: rates must be positive (g >= 0)");
  std::vector<Mode> modes;
  for (const auto& s : bilinear::labels()) modes.push_back({s, 2});
  auto l = make_layout(modes);

  const Mat sp = local::sigma_plus(), sm = local::sigma_minus();
  Operator H = Operator::zero(l);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Operator hop = embed_product({{"B" + std::to_string(i + 1), sp}, {"B" + std::to_string(j + 1), sm}}, l);
      H = H + cplx(J) * (hop + hop.adjoint());
    }
  for (int i = 0; i < 3; ++i) {
    Operator swap = embed_product({{"A" + std::to_string(i + 1), sm}, {"B" + std::to_string(i + 1), sp}}, l);
    H = H + cplx(g) * (swap + swap.adjoint());
  }
  Operator LB = Operator::zero(l);
  for (int i = 0; i < 3; ++i) LB = LB + embed(sm, "B" + std::to_string(i + 1), l);
  LindbladModel model(H, {{"LB", std::sqrt(kappa) * LB}});

  using namespace bilinear;
  auto ket = [&](const Vec& a, const Vec& b) { return Ket::normalized(l, product(a, b)); };

  // Dressed targets: |ggg>|X1> couples only to |X1>|ggg> (X = L, R) through g,
  // via the block [[-J, g], [g, 0]]. Its lower eigenvector (E, g) is an exact
  // dark eigenstate with energy E.
  const double E = 0.5 * (-J - std::sqrt(J * J + 4.0 * g * g));
  auto dressed = [&](const Vec& X1) { return Ket::normalized(l, E * product(ggg(), X1) + g * product(X1, ggg())); };

  ProtocolInstance p{"bilinear",
                     std::move(model),
                     {ket(S1(), R1()), ket(R1(), R1())},
                     {ket(ggg(), R1()), ket(ggg(), L1())},
                     {dressed(R1()), dressed(L1())},
                     {{"R2_B", ket(ggg(), R2())}, {"L2_B", ket(ggg(), L2())}, {"S1_B", ket(ggg(), S1())}},
                     {{"A", {ket(S1(), R1()), ket(R1(), R1())}},
                      {"B*2", {ket(ggg(), R2()), ket(ggg(), L2())}},
                      {"B", {ket(ggg(), R1()), ket(ggg(), L1())}}},
                     {{"omega", omega}, {"J", J}, {"g", g}, {"kappa", kappa}, {"dressed_energy", E}},
                     {}};
  if (g > 0.1 * J) p.warnings.push_back("g/J > 0.1: weak-coupling regime not satisfied");
  if (J > 0.1 * omega) p.warnings.push_back("J/omega > 0.1: rotating-wave regime not satisfied");
  validate_instance(p);
  return p;
}

}  // namespace aqst
