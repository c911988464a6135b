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


#include <gtest/gtest.h>

#include <cmath>

#include "aqst/core/algebra.hpp"
#include "aqst/dynamics/no_jump.hpp"
#include "aqst/oracles/cascaded.hpp"
#include "aqst/oracles/cqed.hpp"
#include "aqst/oracles/minimal.hpp"
#include "aqst/protocols/cascaded.hpp"

using namespace aqst;

TEST(CascadedOracle, RegimeBoundaries) {
  const double lo = 3.0 - 2.0 * std::sqrt(2.0), hi = 3.0 + 2.0 * std::sqrt(2.0);
  EXPECT_EQ(classify_regime(1.0, 0.1), DampingRegime::kOverdamped);
  EXPECT_EQ(classify_regime(1.0, 1.0), DampingRegime::kUnderdamped);
  EXPECT_EQ(classify_regime(1.0, 10.0), DampingRegime::kOverdamped);
  EXPECT_EQ(classify_regime(1.0, lo), DampingRegime::kCritical);
  EXPECT_EQ(classify_regime(1.0, hi), DampingRegime::kCritical);
  EXPECT_STREQ(to_string(DampingRegime::kUnderdamped), "underdamped");
}

TEST(CascadedOracle, AmplitudesSatisfyOdes) {
  for (double g : {0.1, 1.0, 2.0, 50.0}) {
    const auto c = cascaded_coefficients(0.02, 1.0, 1.0, g);
    for (double t : {0.0, 0.3, 1.7, 6.0}) {
      const auto r = c.rhs(t);
      EXPECT_LT(std::abs(c.dC1(t) - r[0]), 1e-12) << g;
      EXPECT_LT(std::abs(c.dC2(t) - r[1]), 1e-12) << g;
      EXPECT_LT(std::abs(c.dC3(t) - r[2]), 1e-12) << g;
    }
    EXPECT_LT(std::abs(c.C2(0.0)), 1e-12);
    EXPECT_LT(std::abs(c.C3(0.0)), 1e-12);
  }
}

TEST(CascadedOracle, AnalyticMatchesQuadrature) {
  for (double g : {0.3, 1.0, 1.83, 4.0, 50.0}) {
    const auto r = cascaded_infidelity(0.02, 1.0, 1.0, g);
    EXPECT_NEAR(r.analytic, r.quadrature, 1e-8 * r.analytic) << g;
    EXPECT_FALSE(r.perturbed);
  }
}

TEST(CascadedOracle, ReferenceValue) {
  EXPECT_NEAR(cascaded_infidelity(0.02, 1.0, 1.0, 50.0).analytic, 2.5790e-4, 1e-7);
}

TEST(CascadedOracle, LargeGammaLimit) {
  const auto r = cascaded_infidelity(0.02, 1.0, 1.0, 1e5);
  EXPECT_NEAR(r.analytic, r.limit_large_gamma, 1e-3 * r.limit_large_gamma);
  EXPECT_NEAR(r.limit_quarter, 0.25 * r.limit_large_gamma, 1e-18);
}

TEST(CascadedOracle, MatchesNoJumpLeak) {
  const double lam = 0.01, g = 3.0;
  const auto inst = build_cascaded_matched(lam, 1.0, 1.0, g);
  const auto rec = evolve_no_jump(inst.model, inst.encode(1.0, 0.0), {0.0, 200.0});
  const double wg = rec.leak("L0").back() + rec.leak("L1").back();
  EXPECT_NEAR(wg, cascaded_infidelity(lam, 1.0, 1.0, g).analytic, 0.02 * wg);
}

TEST(CascadedOracle, DegenerateIsPerturbed) {
  const double crit = 3.0 + 2.0 * std::sqrt(2.0);
  EXPECT_THROW(cascaded_coefficients(0.02, 1.0, 1.0, crit), DegenerateOracle);
  const auto r = cascaded_infidelity(0.02, 1.0, 1.0, crit);
  EXPECT_TRUE(r.perturbed);
  EXPECT_NEAR(r.gamma_used, crit * (1 + 1e-6), 1e-12);
  EXPECT_TRUE(std::isfinite(r.analytic));
  EXPECT_NEAR(r.analytic, cascaded_infidelity(0.02, 1.0, 1.0, crit * 1.001).analytic, 1e-3 * r.analytic);
}

TEST(CascadedOracle, RejectsBadRates) { EXPECT_THROW(cascaded_coefficients(0.1, 0.0, 1.0, 1.0), ConfigError); }

TEST(CqedOracle, Formulas) {
  const auto r = cqed_phase_and_infidelity(0.1, 1.0, 0.05);
  EXPECT_DOUBLE_EQ(r.eta_avg, 0.05);
  EXPECT_DOUBLE_EQ(r.infidelity_raw, 0.005);
  EXPECT_DOUBLE_EQ(r.infidelity_corrected, 0.0025);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_FALSE(cqed_phase_and_infidelity(2.0, 1.0, 0.05).warnings.empty());
  EXPECT_DOUBLE_EQ(cqed_eta(0.0, 0.1, 1.0, 0.2), 0.2);
}

TEST(CqedOracle, QuasiSteadyLimit) {
  const auto q = cqed_quasi_steady(1e3, 0.05, 1.0, 0.0);
  EXPECT_NEAR(std::abs(q.e0 - cplx(0.0, -0.1 / std::sqrt(2.0))), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(q.e0 - q.e1), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(cqed_quasi_steady(0.0, 0.05, 1.0, 0.3).e0), 0.0, 1e-15);
}

TEST(MinimalOracle, RhoInterpolates) {
  const auto rho = minimal_rho(std::log(2.0), 1.0, 0.6, 0.8);
  EXPECT_TRUE(rho.physicality().ok());
  const auto ref = build_minimal_jump(1.0);
  EXPECT_NEAR(fidelity(rho, ref.target(0.6, 0.8)), 0.5, 1e-12);
  EXPECT_NEAR(fidelity(rho, ref.encode(0.6, 0.8)), 0.5, 1e-12);
  EXPECT_EQ(minimal_rho_series({0.0, 1.0, 2.0}, 1.0, 1.0, 0.0).size(), 3u);
}

TEST(MinimalOracle, ReservoirRates) {
  EXPECT_NEAR(convergence_rate(0.1, 10.0), 0.5 * (10.0 - std::sqrt(100.0 - 0.16)), 1e-14);
  EXPECT_NEAR(convergence_rate(1.0, 2.0), 1.0, 1e-14);  // underdamped: gamma/2
  EXPECT_NEAR(kappa_eff(0.5, 4.0), 0.25, 1e-15);
  EXPECT_NEAR(convergence_rate(0.01, 10.0), kappa_eff(0.01, 10.0), 1e-8);
}
