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
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "aqst/core/state.hpp"
#include "aqst/error.hpp"

namespace aqst {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum CqedMode : std::size_t { kModeA = 0, kModeB = 1, kModeR = 2 };

// All rates in rad/us, times in us. Phi[X][i]: zero-point flux of mode X
// across junction i (X = A, B, R; i = I, II).
struct CircuitParams {
  std::array<double, 2> E_J{};
  std::array<std::array<double, 2>, 3> Phi{};
  double omega_A = 0.0, omega_B = 0.0, omega_R = 0.0;  // omega_B is accepted but unused downstream
  double kappa = 0.0;
  cplx xi1 = 0.0, xi2 = 0.0;
  double xi_cap = 0.3;
  double T1_A = 0.0, T1_B = 0.0;  // loaded
  double gamma_up = -1.0;         // < 0: default kappa / 100

  double effective_gamma_up() const { return gamma_up < 0.0 ? kappa / 100.0 : gamma_up; }

  // Warnings for soft limits; throws ConfigError on hard violations.
  std::vector<std::string> validate() const {
    std::vector<std::string> w;
    static const char* names[3] = {"A", "B", "R"};
    for (int x = 0; x < 3; ++x)
      for (int i = 0; i < 2; ++i)
        if (!(Phi[x][i] > 0.0 && Phi[x][i] < 1.0))
          throw ConfigError(std::string("Phi_") + names[x] + (i == 0 ? "I" : "II") + " must lie in (0, 1)");
    for (int i = 0; i < 2; ++i)
      if (!(E_J[i] > 0.0)) throw ConfigError("E_J must be positive");
    for (const cplx xi : {xi1, xi2}) {
      if (std::abs(xi) > 0.5) throw ConfigError("drive displacement |xi| must not exceed 0.5");
      if (std::abs(xi) > 0.3 + 1e-12) w.push_back("drive displacement |xi| above 0.3");
    }
    return w;
  }
};

struct DerivedCqedParams {
  std::array<double, 3> alpha{};  // self-Kerr A, B, R
  double chi_AB = 0.0, chi_AR = 0.0, chi_BR = 0.0;
  std::array<double, 3> stark{};  // delta omega_X
  double Omega1 = 0.0, Omega2 = 0.0;
  cplx xi1 = 0.0, xi2 = 0.0;
  double omega1 = 0.0, omega2 = 0.0;  // drive frequencies
  double delta1 = 0.0, delta2 = 0.0;
};

// Reference circuit: E_J/2pi = 40, 56 GHz; Phi_A = (0.03, 0.23), Phi_B = (Phi_BI, 0.002),
// Phi_R = (0.32, 0.01); mode frequencies 5.9, 6.5, 8.0 GHz.
inline CircuitParams table_circuit(double phi_BI, double kappa = kTwoPi * 1.0) {
  CircuitParams c;
  c.E_J = {kTwoPi * 40e3, kTwoPi * 56e3};
  c.Phi = {{{0.03, 0.23}, {phi_BI, 0.002}, {0.32, 0.01}}};
  c.omega_A = kTwoPi * 5.9e3;
  c.omega_B = kTwoPi * 6.5e3;
  c.omega_R = kTwoPi * 8.0e3;
  c.kappa = kappa;
  c.xi1 = 0.3;
  return c;
}

inline constexpr double kTablePhiBILow = 0.0025;
inline constexpr double kTablePhiBIHigh = 0.0141;

namespace detail {
inline double sum_j(const CircuitParams& c, auto&& term) {
  double s = 0.0;
  for (int i = 0; i < 2; ++i) s += c.E_J[i] * term(i);
  return s;
}
inline double p(const CircuitParams& c, int x, int i) { return c.Phi[x][i]; }
}  // namespace detail

// Self-Kerr, cross-Kerr and Stark shifts (uses circuit.xi1/xi2 for the Stark part).
inline DerivedCqedParams derive_static(const CircuitParams& c) {
  using detail::p;
  using detail::sum_j;
  DerivedCqedParams d;
  for (int x = 0; x < 3; ++x) d.alpha[x] = sum_j(c, [&](int i) { return 0.5 * std::pow(p(c, x, i), 4); });
  auto chi = [&](int x, int y) { return sum_j(c, [&](int i) { return std::pow(p(c, x, i) * p(c, y, i), 2); }); };
  d.chi_AB = chi(kModeA, kModeB);
  d.chi_AR = chi(kModeA, kModeR);
  d.chi_BR = chi(kModeB, kModeR);
  const double x2 = std::norm(c.xi1) + std::norm(c.xi2);
  for (int x = 0; x < 3; ++x)
    d.stark[x] = sum_j(c, [&](int i) {
      return std::pow(p(c, x, i) * p(c, kModeR, i), 2) * x2 + 0.5 * std::pow(p(c, x, i), 4);
    });
  d.xi1 = c.xi1;
  d.xi2 = c.xi2;
  return d;
}

// Omega per unit |xi|.
inline double omega1_per_xi(const CircuitParams& c) {
  using detail::p;
  return detail::sum_j(c, [&](int i) { return p(c, kModeA, i) * p(c, kModeB, i) * std::pow(p(c, kModeR, i), 2); });
}
inline double omega2_per_xi(const CircuitParams& c) {
  using detail::p;
  return detail::sum_j(c, [&](int i) { return 0.5 * std::pow(p(c, kModeA, i) * p(c, kModeR, i), 2); });
}

struct DriveRequest {
  enum class Mode { kAuto, kTargetOmega, kAsGiven };
  Mode mode = Mode::kAuto;
  double target_Omega = 0.0;
};

// Rabi rates, drive amplitudes, detunings and drive frequencies.
//   kAuto:        xi1 at its cap, xi2 solved so that Omega2 = Omega1
//   kTargetOmega: both amplitudes solved for the requested Omega
//   kAsGiven:     use circuit.xi1, circuit.xi2
inline DerivedCqedParams derive_drives(const CircuitParams& c, const DriveRequest& req = {}) {
  const double s1 = omega1_per_xi(c), s2 = omega2_per_xi(c);
  CircuitParams cc = c;
  switch (req.mode) {
    case DriveRequest::Mode::kAuto: {
      cc.xi1 = c.xi_cap;
      const double xi2 = s1 * c.xi_cap / s2;
      if (xi2 > c.xi_cap)
        throw ConfigError("derive_drives: xi2 = " + std::to_string(xi2) + " would exceed the xi cap " +
                          std::to_string(c.xi_cap) + " (binding constraint: xi2 cap)");
      cc.xi2 = xi2;
      break;
    }
    case DriveRequest::Mode::kTargetOmega: {
      const double xi1 = req.target_Omega / s1, xi2 = req.target_Omega / s2;
      if (xi1 > c.xi_cap)
        throw ConfigError("derive_drives: requested Omega needs xi1 = " + std::to_string(xi1) +
                          " above the cap (binding constraint: xi1 cap)");
      if (xi2 > c.xi_cap)
        throw ConfigError("derive_drives: requested Omega needs xi2 = " + std::to_string(xi2) +
                          " above the cap (binding constraint: xi2 cap)");
      cc.xi1 = xi1;
      cc.xi2 = xi2;
      break;
    }
    case DriveRequest::Mode::kAsGiven:
      break;
  }
  DerivedCqedParams d = derive_static(cc);
  d.Omega1 = s1 * std::abs(cc.xi1);
  d.Omega2 = s2 * std::abs(cc.xi2);
  d.delta1 = -0.5 * d.chi_BR;
  d.delta2 = 0.5 * d.chi_BR;
  const double wA = c.omega_A - d.stark[kModeA];
  const double wB = c.omega_B - d.stark[kModeB];
  const double wR = c.omega_R - d.stark[kModeR];
  d.omega1 = (wB + wR - d.chi_BR) - wA + d.delta1;
  d.omega2 = (2.0 * wA - d.alpha[kModeA]) - wR - d.delta2;
  return d;
}

// Generalized Rabi rates of the two detuned transitions.
inline std::array<double, 2> generalized_rabi_rates(const DerivedCqedParams& d) {
  return {std::hypot(d.Omega1, d.delta1), std::hypot(d.Omega2, d.delta2)};
}

// xi = i eps / (kappa + i (omega_R - omega_d)).
inline cplx displacement_amplitude(double eps, double omega_R, double omega_d, double kappa) {
  if (!(kappa > 0.0)) throw ConfigError("displacement_amplitude: kappa must be > 0");
  return kI * eps / cplx(kappa, omega_R - omega_d);
}

// Loaded T1 of A and B interpolated linearly in rate across the tabulated
// ranges (A: 42 -> 14 us, B: 500 -> 80 us) as chi_BR moves between its values
// at the two Phi_BI endpoints. Clamped at the ends.
inline std::pair<double, double> table_loaded_t1(double chi_BR) {
  const double lo = derive_static(table_circuit(kTablePhiBILow)).chi_BR;
  const double hi = derive_static(table_circuit(kTablePhiBIHigh)).chi_BR;
  const double s = std::clamp((chi_BR - lo) / (hi - lo), 0.0, 1.0);
  const double gA = 1.0 / 42.0 + s * (1.0 / 14.0 - 1.0 / 42.0);
  const double gB = 1.0 / 500.0 + s * (1.0 / 80.0 - 1.0 / 500.0);
  return {1.0 / gA, 1.0 / gB};
}

}  // namespace aqst
