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
#include "aqst/diagnostics/manifold.hpp"
#include "aqst/dynamics/master.hpp"
#include "aqst/protocols/bilinear.hpp"
#include "aqst/protocols/cascaded.hpp"
#include "aqst/protocols/minimal.hpp"

using namespace aqst;

namespace {
double op_norm(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST(Minimal, JumpMapsInitialToTarget) {
  const auto p = build_minimal_jump(2.0);
  const Mat L = p.model.jumps()[0].op.matrix();
  for (int s = 0; s < 2; ++s) {
    const Vec out = L * p.initial_basis[s].amplitudes();
    EXPECT_LT((out - std::sqrt(2.0) * p.target_basis[s].amplitudes()).norm(), 1e-14);
  }
  EXPECT_EQ(p.model.jumps()[0].label, "L");
  EXPECT_TRUE(check_dark_manifold(p.model, p.dark_targets).verdict);
  EXPECT_FALSE(check_dark_manifold(p.model, {p.initial_basis[0]}).verdict);
}

TEST(Minimal, RejectsNonPositiveKappa) {
  EXPECT_THROW(build_minimal_jump(0.0), ConfigError);
  EXPECT_THROW(build_minimal_jump(-1.0), ConfigError);
}

TEST(Minimal, EncodeRequiresNormalizedAmplitudes) {
  const auto p = build_minimal_jump(1.0);
  EXPECT_THROW(p.encode(1.0, 1.0), std::invalid_argument);
  EXPECT_NO_THROW(p.encode(0.6, cplx(0.0, 0.8)));
  const Ket k = p.encode(0.6, cplx(0.0, 0.8));
  EXPECT_NEAR(std::abs(p.initial_basis[1].inner(k) - cplx(0.0, 0.8)), 0.0, 1e-14);
}

TEST(Minimal, ReservoirZeroOmegaWarns) {
  const auto p = build_minimal_reservoir(0.0, 1.0);
  bool found = false;
  for (const auto& w : p.warnings) found = found || w.find("Omega = 0") != std::string::npos;
  EXPECT_TRUE(found);
  EXPECT_EQ(p.params.at("Omega"), 0.0);
}

TEST(Minimal, ReservoirUnequalLegsIsNamed) {
  EXPECT_EQ(build_minimal_reservoir_legs(1.0, 0.5, 10.0).name, "minimal_reservoir_unequal_legs");
  EXPECT_EQ(build_minimal_reservoir(1.0, 10.0).name, "minimal_reservoir");
}

TEST(Minimal, ReservoirDarkTargets) {
  const auto p = build_minimal_reservoir(0.5, 4.0);
  EXPECT_TRUE(check_dark_manifold(p.model, p.dark_targets).verdict);
  EXPECT_FALSE(check_dark_manifold(p.model, {p.initial_basis[0], p.initial_basis[1]}).verdict);
}

TEST(Cascaded, TargetsAreDarkAndInitialIsNot) {
  const auto p = build_cascaded_matched(0.05, 1.0, 1.0, 2.0);
  EXPECT_TRUE(check_dark_manifold(p.model, p.dark_targets).verdict);
  const auto r = check_dark_manifold(p.model, {p.initial_basis[0], p.initial_basis[1]});
  EXPECT_FALSE(r.verdict);
  ASSERT_EQ(r.channels.size(), 3u);
  EXPECT_EQ(r.channels[0], "L0");
  EXPECT_EQ(r.channels[2], "Lr");
}

TEST(Cascaded, WarningsForAdiabaticityAndMismatch) {
  const auto ok = build_cascaded_matched(0.05, 1.0, 1.0, 2.0);
  EXPECT_TRUE(ok.warnings.empty());
  const auto fast = build_cascaded_matched(0.5, 1.0, 1.0, 2.0);
  EXPECT_FALSE(fast.warnings.empty());
  const auto mis = build_cascaded(0.05, 1.0, 1.0, 1.0, 2.0);
  bool found = false;
  for (const auto& w : mis.warnings) found = found || w.find("impedance") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(Cascaded, DarkStateApproximatelyStationary) {
  const double lam = 0.01, ka = 1.0, kb = 1.0, g = 2.0;
  const auto p = build_cascaded_matched(lam, ka, kb, g);
  const Ket d = cascaded_dark_state(p, lam, ka, kb, g, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  // The no-jump generator acting on the expansion leaves only O(lambda^2) residue.
  const Vec v = d.amplitudes();
  const Vec r = p.model.heff_dense() * v;
  const cplx E = v.dot(r);
  EXPECT_LT((r - E * v).norm(), 10 * lam * lam);
}

TEST(Cascaded, TraceConservedUnderEvolution) {
  const auto p = build_cascaded_matched(0.1, 1.0, 1.0, 2.0);
  const auto out = evolve_master(p.model, DensityMatrix::from_ket(p.encode(1.0, 0.0)), {0.0, 5.0, 20.0});
  for (const auto& rho : out) EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-9);
}

TEST(Bilinear, CyclicSymmetry) {
  const auto p = build_bilinear(100.0, 1.0, 0.05, 0.5);
  const Mat T = cyclic_permutation_operator(p.layout()).matrix();
  const Mat& H = p.model.hamiltonian().matrix();
  const Mat& L = p.model.jumps()[0].op.matrix();
  EXPECT_LE(op_norm(T * H - H * T), 1e-12);
  EXPECT_LE(op_norm(T * L - L * T), 1e-12);
  EXPECT_EQ(p.model.jumps()[0].label, "LB");
}

TEST(Bilinear, JumpAnnihilatesChiralStatesAndLowersR2) {
  const auto p = build_bilinear(100.0, 1.0, 0.05, 0.5);
  const Mat& L = p.model.jumps()[0].op.matrix();
  using namespace bilinear;
  const auto& l = p.layout();
  EXPECT_LT((L * Ket::normalized(l, product(ggg(), L1())).amplitudes()).norm(), 1e-12);
  EXPECT_LT((L * Ket::normalized(l, product(ggg(), R1())).amplitudes()).norm(), 1e-12);
  const Vec out = L * p.aux("R2_B").amplitudes();
  ASSERT_GT(out.norm(), 1e-6);
  const Vec tgt = Ket::normalized(l, product(ggg(), R1())).amplitudes();
  EXPECT_NEAR(std::abs(tgt.dot(out)) / out.norm(), 1.0, 1e-12);
  EXPECT_GT((L * p.aux("S1_B").amplitudes()).norm(), 1e-3);
}

TEST(Bilinear, DressedTargetsAreExactDarkStates) {
  const auto p = build_bilinear(100.0, 1.0, 0.05, 0.5);
  EXPECT_TRUE(check_dark_manifold(p.model, p.dark_targets).verdict);
  EXPECT_THROW(p.aux("missing"), LayoutError);
}

TEST(Bilinear, RegimeWarnings) {
  EXPECT_TRUE(build_bilinear(100.0, 1.0, 0.05, 0.5).warnings.empty());
  EXPECT_EQ(build_bilinear(5.0, 1.0, 0.5, 0.5).warnings.size(), 2u);
}

TEST(Instance, CardinalPointsNormalized) {
  for (const auto& c : cardinal_points()) EXPECT_NEAR(std::norm(c.alpha) + std::norm(c.beta), 1.0, 1e-15);
}

// |S1>_A|R1>_B and |L1>_A|L1>_B are degenerate and both reach |ggg>|R2>_B,
// with couplings in ratio 1:2, so only 1/5 of |S1 R1> is bright.
TEST(Bilinear, DegeneratePartnerCouplingRatio) {
  const auto p = build_bilinear(100.0, 1.0, 0.02, 0.08);
  using namespace bilinear;
  const auto& l = p.layout();
  const Mat& H = p.model.hamiltonian().matrix();
  const Vec s1r1 = Ket::normalized(l, product(S1(), R1())).amplitudes();
  const Vec l1l1 = Ket::normalized(l, product(L1(), L1())).amplitudes();
  const Vec r2 = p.aux("R2_B").amplitudes();
  EXPECT_NEAR(s1r1.dot(H * s1r1).real(), l1l1.dot(H * l1l1).real(), 1e-12);
  const double c0 = std::abs(r2.dot(H * s1r1)), c1 = std::abs(r2.dot(H * l1l1));
  ASSERT_GT(c0, 1e-6);
  EXPECT_NEAR(c1 / c0, 2.0, 1e-12);
}
