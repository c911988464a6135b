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
#include <complex>
#include <limits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "aqst/core/state.hpp"
#include "aqst/error.hpp"

namespace aqst {

enum class DampingRegime { kUnderdamped, kOverdamped, kCritical };

inline const char* to_string(DampingRegime r) {
  switch (r) {
    case DampingRegime::kUnderdamped: return "underdamped";
    case DampingRegime::kOverdamped: return "overdamped";
    case DampingRegime::kCritical: return "critical";
  }
  return "?";
}

// Sign of (kb + gamma)^2 - 8 gamma kb; zero within 1e-9 relative is critical.
inline DampingRegime classify_regime(double kappa_b, double gamma) {
  const double s = kappa_b + gamma;
  const double disc = s * s - 8.0 * gamma * kappa_b;
  if (std::abs(disc) <= 1e-9 * s * s) return DampingRegime::kCritical;
  return disc < 0.0 ? DampingRegime::kUnderdamped : DampingRegime::kOverdamped;
}

// First-order no-jump amplitudes of the cascaded model (impedance matched,
// Omega = sqrt(kb gamma)/2), starting from the emitter:
//   C1 = -2i l/ka (1 - e^{-ka t/2})
//   C2 = 2i l/sqrt(ka kb) (1 - x2 e^{-ka t/2} - y2 e^{-k' t} - z2 e^{-g' t})
//   C3 = 2 l/sqrt(ka gamma) (1 - x3 e^{-ka t/2} - y3 e^{-k' t} - z3 e^{-g' t})
// with k' = [(kb+g) - D]/4 and g' = [(kb+g) + D]/4, D = sqrt((kb+g)^2 - 8 g kb).
struct CascadedCoefficients {
  double lambda = 0, kappa_a = 0, kappa_b = 0, gamma = 0;
  cplx kappa_prime, gamma_prime;
  cplx x2, x3, y2, z2, y3, z3;
  DampingRegime regime = DampingRegime::kOverdamped;

  cplx C1(double t) const { return cplx(0, -2.0 * lambda / kappa_a) * (1.0 - std::exp(-0.5 * kappa_a * t)); }
  cplx C2(double t) const { return pref2() * (1.0 - shape(x2, y2, z2, t)); }
  cplx C3(double t) const { return pref3() * (1.0 - shape(x3, y3, z3, t)); }

  cplx dC1(double t) const { return cplx(0, -lambda) * std::exp(-0.5 * kappa_a * t); }
  cplx dC2(double t) const { return -pref2() * dshape(x2, y2, z2, t); }
  cplx dC3(double t) const { return -pref3() * dshape(x3, y3, z3, t); }

  // Amplitude radiated into the waveguide: sqrt(ka) C1 + sqrt(kb) C2.
  cplx leak_amplitude(double t) const { return std::sqrt(kappa_a) * C1(t) + std::sqrt(kappa_b) * C2(t); }

  // Right-hand sides of the amplitude equations, for residual checks.
  std::array<cplx, 3> rhs(double t) const {
    const double om = 0.5 * std::sqrt(kappa_b * gamma);
    const cplx c1 = C1(t), c2 = C2(t), c3 = C3(t);
    return {cplx(0, -lambda) - 0.5 * kappa_a * c1,
            -std::sqrt(kappa_a * kappa_b) * c1 - 0.5 * kappa_b * c2 - kI * om * c3,
            -kI * om * c2 - 0.5 * gamma * c3};
  }

 private:
  cplx pref2() const { return cplx(0, 2.0 * lambda / std::sqrt(kappa_a * kappa_b)); }
  cplx pref3() const { return cplx(2.0 * lambda / std::sqrt(kappa_a * gamma), 0); }
  cplx shape(cplx x, cplx y, cplx z, double t) const {
    return x * std::exp(-0.5 * kappa_a * t) + y * std::exp(-kappa_prime * t) + z * std::exp(-gamma_prime * t);
  }
  cplx dshape(cplx x, cplx y, cplx z, double t) const {
    return -0.5 * kappa_a * x * std::exp(-0.5 * kappa_a * t) - kappa_prime * y * std::exp(-kappa_prime * t) -
           gamma_prime * z * std::exp(-gamma_prime * t);
  }
};

inline CascadedCoefficients cascaded_coefficients(double lambda, double kappa_a, double kappa_b, double gamma) {
  if (!(kappa_a > 0 && kappa_b > 0 && gamma > 0)) throw ConfigError("cascaded_coefficients: rates must be > 0");
  CascadedCoefficients c;
  c.lambda = lambda;
  c.kappa_a = kappa_a;
  c.kappa_b = kappa_b;
  c.gamma = gamma;
  c.regime = classify_regime(kappa_b, gamma);
  const double s = kappa_b + gamma;
  const cplx D = std::sqrt(cplx(s * s - 8.0 * gamma * kappa_b, 0.0));
  if (std::abs(D) <= 1e-9 * s) throw DegenerateOracle("cascaded_coefficients: k' = g' (critical damping)");
  c.kappa_prime = 0.25 * (s - D);
  c.gamma_prime = 0.25 * (s + D);
  const double half = 0.5 * kappa_a;
  const double scale = std::max(half, s);
  if (std::abs(half - c.kappa_prime) <= 1e-9 * scale || std::abs(half - c.gamma_prime) <= 1e-9 * scale)
    throw DegenerateOracle("cascaded_coefficients: ka/2 collides with k' or g'");
  const double den = 2.0 * kappa_b * gamma + kappa_a * kappa_a - kappa_a * kappa_b - kappa_a * gamma;
  c.x2 = 2.0 * kappa_b * (gamma - kappa_a) / den;
  c.x3 = 2.0 * kappa_b * gamma / den;
  auto split = [&](cplx x, cplx& y, cplx& z) {
    const cplx N = s + (2.0 * kappa_a - kappa_b - gamma) * x;
    y = 0.5 * ((1.0 - x) + N / D);
    z = 0.5 * ((1.0 - x) - N / D);
  };
  split(c.x2, c.y2, c.z2);
  split(c.x3, c.y3, c.z3);
  return c;
}

struct CascadedInfidelity {
  double analytic = 0.0;          // term-by-term exponential integrals
  double quadrature = 0.0;        // adaptive quadrature cross-check
  double limit_large_gamma = 0.0;    // 2 l^2 / (kb (ka + 2 kb)), gamma >> Omega
  double limit_quarter = 0.0;   // l^2 / (2 kb (ka + 2 kb)), the 4x smaller alternative
  double gamma_used = 0.0;        // gamma after any degeneracy perturbation
  bool perturbed = false;
};

// Integral over [0, inf) of |sqrt(ka) C1 + sqrt(kb) C2|^2. Colliding exponents
// are handled by nudging gamma by 1e-6 relative (reported in the result).
inline CascadedInfidelity cascaded_infidelity(double lambda, double kappa_a, double kappa_b, double gamma) {
  CascadedInfidelity r;
  r.limit_large_gamma = 2.0 * lambda * lambda / (kappa_b * (kappa_a + 2.0 * kappa_b));
  r.limit_quarter = lambda * lambda / (2.0 * kappa_b * (kappa_a + 2.0 * kappa_b));
  CascadedCoefficients c;
  r.gamma_used = gamma;
  try {
    c = cascaded_coefficients(lambda, kappa_a, kappa_b, gamma);
  } catch (const DegenerateOracle&) {
    r.gamma_used = gamma * (1.0 + 1e-6);
    r.perturbed = true;
    c = cascaded_coefficients(lambda, kappa_a, kappa_b, r.gamma_used);
  }
  // leak amplitude = (2i l / sqrt(ka)) sum_j a_j e^{-r_j t}
  const std::array<cplx, 3> a{1.0 - c.x2, -c.y2, -c.z2};
  const std::array<cplx, 3> rr{0.5 * kappa_a, c.kappa_prime, c.gamma_prime};
  cplx acc = 0.0;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) acc += a[j] * std::conj(a[k]) / (rr[j] + std::conj(rr[k]));
  r.analytic = 4.0 * lambda * lambda / kappa_a * acc.real();

  boost::math::quadrature::exp_sinh<double> integrator;
  r.quadrature = integrator.integrate([&](double t) { return std::norm(c.leak_amplitude(t)); },
                                      std::sqrt(std::numeric_limits<double>::epsilon()));
  return r;
}

}  // namespace aqst
