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
#include <string>
#include <vector>

#include "aqst/core/state.hpp"

namespace aqst {

struct CqedPhaseInfidelity {
  double eta_avg = 0.0;                // chi/2kappa, per path; relative phase is 2 eta_avg
  double infidelity_raw = 0.0;         // chi^2/2kappa^2
  double infidelity_corrected = 0.0;   // chi^2/4kappa^2, after removing the mean phase
  std::vector<std::string> warnings;
};

// Omega is accepted for symmetry with the model parameters; the results do
// not depend on it.
inline CqedPhaseInfidelity cqed_phase_and_infidelity(double chi_b, double kappa, double /*omega*/) {
  CqedPhaseInfidelity r;
  const double x = chi_b / kappa;
  r.eta_avg = 0.5 * x;
  r.infidelity_raw = 0.5 * x * x;
  r.infidelity_corrected = 0.25 * x * x;
  if (chi_b >= kappa) r.warnings.push_back("chi_b >= kappa: small-ratio expansion invalid");
  return r;
}

// Jump-time dependent phase eta(t) = chi/kappa - 2 Omega^2 chi t / kappa^2.
inline double cqed_eta(double t, double omega, double kappa, double chi_b) {
  return chi_b / kappa - 2.0 * omega * omega * chi_b * t / (kappa * kappa);
}

// First-order no-jump amplitudes from the equator state, short-time regime.
// e0 relaxes with (kappa - i chi)/2, e1 with (kappa + i chi)/2.
struct CqedQuasiSteady {
  cplx a0, a1, e0, e1;
  std::vector<std::string> warnings;
};

inline CqedQuasiSteady cqed_quasi_steady(double t, double omega, double kappa, double chi_b) {
  CqedQuasiSteady q;
  const double s = 1.0 / std::sqrt(2.0);
  const cplx km(kappa, -chi_b), kp(kappa, chi_b);
  q.a0 = s;
  q.a1 = s;
  q.e0 = -s * (2.0 * kI * omega / km) * (1.0 - std::exp(-0.5 * km * t));
  q.e1 = -s * (2.0 * kI * omega / kp) * (1.0 - std::exp(-0.5 * kp * t));
  if (omega > 0.2 * kappa) q.warnings.push_back("Omega/kappa > 0.2: quasi-steady expansion unreliable");
  return q;
}

}  // namespace aqst
