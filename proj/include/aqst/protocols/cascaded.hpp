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
#include "aqst/protocols/minimal.hpp"

namespace aqst {

// Layout [A:3, a:3, b:3, B:3, R:2]. A, a, b, B use 0 = |0> (red), 1 = |1>
// (blue), 2 = |vac>; R uses 0 = g, 1 = e. The ancillas a, b hold at most one
// photon, enforced by conservation of the information count below.
//   H_A  = lambda sum_s (a_s^dag A_s + h.c.)
//   H_ab = (i/2) sqrt(ka kb) sum_s (a_s^dag b_s - b_s^dag a_s)
//   H_c  = Omega sum_s (b_s B_s^dag r^dag + h.c.)
//   L_s  = sqrt(ka) a_s + sqrt(kb) b_s,   L_r = sqrt(gamma) r
inline ProtocolInstance build_cascaded(double lambda, double kappa_a, double kappa_b, double omega, double gamma) {
  if (!(lambda >= 0.0 && kappa_a > 0.0 && kappa_b > 0.0 && omega > 0.0 && gamma > 0.0))
    throw ConfigError("build_cascaded: rates must be positive (lambda >= 0)");
  auto l = make_layout({{"A", 3}, {"a", 3}, {"b", 3}, {"B", 3}, {"R", 2}});
  const Eigen::Index n = Eigen::Index(l->total_dim());

  auto low = [](std::size_t s) { return local::ket_bra(3, kVac, s); };   // |vac><s|
  auto raise = [](std::size_t s) { return local::ket_bra(3, s, kVac); };  // |s><vac|

  Operator H = Operator::zero(l);
  std::vector<JumpChannel> jumps;
  for (std::size_t s = 0; s < 2; ++s) {
    Operator hA = embed_product({{"A", low(s)}, {"a", raise(s)}}, l);
    H = H + cplx(lambda) * (hA + hA.adjoint());
    Operator ab = embed_product({{"a", raise(s)}, {"b", low(s)}}, l);
    H = H + cplx(0.0, 0.5 * std::sqrt(kappa_a * kappa_b)) * (ab - ab.adjoint());
    Operator hc = embed_product({{"b", low(s)}, {"B", raise(s)}, {"R", local::sigma_plus()}}, l);
    H = H + cplx(omega) * (hc + hc.adjoint());
    Operator Ls = std::sqrt(kappa_a) * embed(low(s), "a", l) + std::sqrt(kappa_b) * embed(low(s), "b", l);
    jumps.push_back({s == 0 ? "L0" : "L1", Ls});
  }
  jumps.push_back({"Lr", std::sqrt(gamma) * embed(local::sigma_minus(), "R", l)});

  // Information count: number of non-vacuum modes among A, a, b, B.
  Mat N = Mat::Zero(n, n);
  for (std::size_t f = 0; f < l->total_dim(); ++f) {
    const auto d = l->digits(f);
    N(Eigen::Index(f), Eigen::Index(f)) = double((d[0] != kVac) + (d[1] != kVac) + (d[2] != kVac) + (d[3] != kVac));
  }
  const Mat& h = H.matrix();
  if ((h * N - N * h).cwiseAbs().maxCoeff() > 1e-12)
    throw std::logic_error("build_cascaded: Hamiltonian does not conserve the information count");
  for (std::size_t s = 0; s < 2; ++s) {
    const Mat& L = jumps[s].op.matrix();
    if ((N * L - L * N + L).cwiseAbs().maxCoeff() > 1e-12)
      throw std::logic_error("build_cascaded: waveguide jump does not lower the information count by one");
  }
  {
    const Mat& L = jumps[2].op.matrix();
    if ((N * L - L * N).cwiseAbs().maxCoeff() > 1e-12)
      throw std::logic_error("build_cascaded: reservoir jump changes the information count");
  }

  LindbladModel model(H, std::move(jumps));
  auto k = [&](std::size_t A, std::size_t a, std::size_t b, std::size_t B, std::size_t R) {
    return Ket::basis(l, {A, a, b, B, R});
  };
  const std::size_t v = kVac;
  ProtocolInstance p{"cascaded",
                     std::move(model),
                     {k(0, v, v, v, 0), k(1, v, v, v, 0)},
                     {k(v, v, v, 0, 0), k(v, v, v, 1, 0)},
                     {k(v, v, v, 0, 0), k(v, v, v, 1, 0)},
                     {{"vacuum", k(v, v, v, v, 0)}},
                     {{"A", {k(0, v, v, v, 0), k(1, v, v, v, 0)}},
                      {"a", {k(v, 0, v, v, 0), k(v, 1, v, v, 0)}},
                      {"b", {k(v, v, 0, v, 0), k(v, v, 1, v, 0)}},
                      {"B*e", {k(v, v, v, 0, 1), k(v, v, v, 1, 1)}},
                      {"B", {k(v, v, v, 0, 0), k(v, v, v, 1, 0)}}},
                     {{"lambda", lambda}, {"kappa_a", kappa_a}, {"kappa_b", kappa_b}, {"Omega", omega}, {"gamma", gamma}},
                     {}};
  if (lambda > 0.2 * kappa_a) p.warnings.push_back("lambda/kappa_a > 0.2: adiabatic regime not satisfied");
  const double match = 4.0 * omega * omega / gamma;
  if (std::abs(match - kappa_b) > 1e-9 * kappa_b)
    p.warnings.push_back("impedance mismatch: 4 Omega^2/gamma != kappa_b");
  validate_instance(p);
  return p;
}

// Impedance-matched convenience: Omega = sqrt(kappa_b gamma)/2.
inline ProtocolInstance build_cascaded_matched(double lambda, double kappa_a, double kappa_b, double gamma) {
  return build_cascaded(lambda, kappa_a, kappa_b, 0.5 * std::sqrt(kappa_b * gamma), gamma);
}

// Quasi-steady dark state: C0 |psi>_A + C1 |psi>_a + C2 |psi>_b + C3 |psi>_B|e>_R,
// C0 = 1, C1 = -2i lambda/ka, C2 = 2i lambda/sqrt(ka kb), C3 = 2 lambda/sqrt(ka gamma), normalized.
inline Ket cascaded_dark_state(const ProtocolInstance& inst, double lambda, double kappa_a, double kappa_b,
                               double gamma, cplx alpha, cplx beta, std::vector<std::string>* warnings = nullptr) {
  const auto& l = inst.layout();
  if (l->labels() != std::vector<std::string>{"A", "a", "b", "B", "R"})
    throw LayoutError("cascaded_dark_state: instance is not a cascaded model");
  if (warnings && lambda > 0.2 * kappa_a) warnings->push_back("lambda/kappa_a > 0.2: dark-state expansion unreliable");
  const cplx c1 = cplx(0.0, -2.0 * lambda / kappa_a);
  const cplx c2 = cplx(0.0, 2.0 * lambda / std::sqrt(kappa_a * kappa_b));
  const cplx c3 = 2.0 * lambda / std::sqrt(kappa_a * gamma);
  const std::size_t v = kVac;
  Vec psi = Vec::Zero(Eigen::Index(l->total_dim()));
  const cplx amp[2] = {alpha, beta};
  for (std::size_t s = 0; s < 2; ++s) {
    psi(Eigen::Index(l->index({s, v, v, v, 0}))) += amp[s];
    psi(Eigen::Index(l->index({v, s, v, v, 0}))) += c1 * amp[s];
    psi(Eigen::Index(l->index({v, v, s, v, 0}))) += c2 * amp[s];
    psi(Eigen::Index(l->index({v, v, v, s, 1}))) += c3 * amp[s];
  }
  return Ket::normalized(l, std::move(psi));
}

}  // namespace aqst
