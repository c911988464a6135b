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
#include <complex>
#include <vector>

#include "aqst/protocols/minimal.hpp"

namespace aqst {

// e^{-kt} rho_init + (1 - e^{-kt}) rho_target on the minimal [A:3, B:3] layout.
inline DensityMatrix minimal_rho(double t, double kappa, cplx alpha, cplx beta) {
  static const ProtocolInstance ref = build_minimal_jump(1.0);
  const Ket a = ref.encode(alpha, beta), b = ref.target(alpha, beta);
  const double p = std::exp(-kappa * t);
  const Mat m = p * (a.amplitudes() * a.amplitudes().adjoint()) +
                (1.0 - p) * (b.amplitudes() * b.amplitudes().adjoint());
  return DensityMatrix(ref.layout(), m);
}

inline std::vector<DensityMatrix> minimal_rho_series(const std::vector<double>& t, double kappa, cplx alpha,
                                                     cplx beta) {
  std::vector<DensityMatrix> out;
  for (double ti : t) out.push_back(minimal_rho(ti, kappa, alpha, beta));
  return out;
}

// Re[gamma - sqrt(gamma^2 - 16 Omega^2)] / 2.
inline double convergence_rate(double omega, double gamma) {
  const cplx s = std::sqrt(cplx(gamma * gamma - 16.0 * omega * omega, 0.0));
  return 0.5 * (gamma - s.real());
}

inline double kappa_eff(double omega, double gamma) { return 4.0 * omega * omega / gamma; }

}  // namespace aqst
