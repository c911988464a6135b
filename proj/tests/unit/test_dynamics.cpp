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
#include "aqst/dynamics/integrator.hpp"
#include "aqst/dynamics/master.hpp"
#include "aqst/dynamics/no_jump.hpp"
#include "aqst/dynamics/propagator.hpp"
#include "aqst/dynamics/random.hpp"
#include "aqst/dynamics/subspace.hpp"
#include "aqst/dynamics/trajectory.hpp"
#include "aqst/protocols/minimal.hpp"

using namespace aqst;

namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
  return v;
}

// Qubit with H = (w/2) sigma_z + r sigma_x and decay sqrt(k) sigma_minus.
LindbladModel qubit(double w, double r, double k) {
  auto l = make_layout({{"q", 2}});
  Mat sx(2, 2);
  sx << 0, 1, 1, 0;
  Operator H(l, 0.5 * w * local::sigma_z() + r * sx);
  std::vector<JumpChannel> j;
  if (k > 0) j.push_back({"decay", Operator(l, std::sqrt(k) * local::sigma_minus())});
  return LindbladModel(H, j);
}

}  // namespace

TEST(Integrator, ExponentialDecayToTolerance) {
  using V = Eigen::VectorXcd;
  DormandPrince5<V> dp([](double, const V& y, V& dy) { dy = cplx(-1.0, 2.0) * y; }, {});
  V y = V::Ones(1);
  double t = 0.0;
  dp.advance(t, y, 3.0);
  EXPECT_EQ(t, 3.0);
  EXPECT_NEAR(std::abs(y(0) - std::exp(cplx(-3.0, 6.0))), 0.0, 1e-9);
  EXPECT_GT(dp.stats().accepted, 0u);
}

TEST(Integrator, FixedStepFallback) {
  using V = Eigen::VectorXcd;
  IntegratorOptions o;
  o.fixed_step = true;
  o.fixed_dt = 1e-3;
  DormandPrince5<V> dp([](double, const V& y, V& dy) { dy = -y; }, o);
  V y = V::Ones(1);
  double t = 0.0;
  dp.advance(t, y, 1.0);
  EXPECT_NEAR(y(0).real(), std::exp(-1.0), 1e-12);
}

TEST(Integrator, StepBudgetRaisesNumericalError) {
  using V = Eigen::VectorXcd;
  IntegratorOptions o;
  o.max_steps = 3;
  DormandPrince5<V> dp([](double, const V& y, V& dy) { dy = cplx(0, 100.0) * y; }, o);
  V y = V::Ones(1);
  double t = 0.0;
  try {
    dp.advance(t, y, 10.0);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_GE(e.last_good_time(), 0.0);
    EXPECT_LT(e.last_good_time(), 10.0);
  }
}

TEST(Master, DecayMatchesClosedForm) {
  const double k = 2.0;
  const auto m = qubit(0.0, 0.0, k);
  const auto l = m.layout();
  const auto out = evolve_master(m, DensityMatrix::from_ket(Ket::basis(l, {1})), linspace(0, 3, 31));
  for (std::size_t i = 0; i < out.size(); ++i)
    EXPECT_NEAR(out[i].matrix()(1, 1).real(), std::exp(-k * 0.1 * double(i)), 1e-9);
}

TEST(Master, RabiOscillationMatchesClosedForm) {
  // H = r sigma_x from |g>: P_e = sin^2(r t)
  const double r = 1.3;
  const auto m = qubit(0.0, r, 0.0);
  const auto grid = linspace(0, 5, 51);
  const auto out = evolve_master(m, DensityMatrix::from_ket(Ket::basis(m.layout(), {0})), grid);
  for (std::size_t i = 0; i < out.size(); ++i)
    EXPECT_NEAR(out[i].matrix()(1, 1).real(), std::pow(std::sin(r * grid[i]), 2), 1e-9);
}

TEST(Master, TracePreservedAndPhysical) {
  const auto m = qubit(1.0, 0.7, 0.4);
  for (const auto& rho : evolve_master(m, DensityMatrix::from_ket(Ket::basis(m.layout(), {1})), linspace(0, 10, 41))) {
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-9);
    EXPECT_TRUE(rho.physicality().ok());
  }
}

TEST(Master, RhsIsTraceless) {
  const auto m = qubit(1.0, 0.7, 0.4);
  const auto d = lindblad_rhs(m, DensityMatrix::from_ket(Ket::basis(m.layout(), {1})));
  EXPECT_NEAR(std::abs(d.trace()), 0.0, 1e-14);
}

TEST(Master, RejectsUnphysicalInitialState) {
  const auto m = qubit(1.0, 0.0, 1.0);
  Mat bad(2, 2);
  bad << 1.5, 0, 0, -0.5;
  EXPECT_THROW(evolve_master(m, DensityMatrix(m.layout(), bad), {0.0, 1.0}), std::invalid_argument);
}

TEST(Master, ModelValidation) {
  auto l = make_layout({{"q", 2}});
  Mat h(2, 2);
  h << 0, 1, 0, 0;
  EXPECT_THROW(LindbladModel(Operator(l, h), {}), std::invalid_argument);
  const Operator s(l, local::sigma_minus());
  EXPECT_THROW(LindbladModel(Operator::zero(l), {{"x", s}, {"x", s}}), std::invalid_argument);
}

TEST(NoJump, NormPlusLeakIsOne) {
  const auto m = qubit(0.5, 0.9, 1.5);
  const auto rec = evolve_no_jump(m, Ket::basis(m.layout(), {1}), linspace(0, 6, 25));
  for (std::size_t i = 0; i < rec.times.size(); ++i) EXPECT_NEAR(rec.norm_squared(i) + rec.total_leak(i), 1.0, 1e-9);
  const auto pure = qubit(0.0, 0.0, 2.0);
  const auto r2 = evolve_no_jump(pure, Ket::basis(pure.layout(), {1}), {0.0, 1.0});
  EXPECT_NEAR(r2.norm_squared(1), std::exp(-2.0), 1e-10);
  EXPECT_NEAR(r2.leak("decay").back(), 1.0 - std::exp(-2.0), 1e-10);
}

TEST(Random, DerivedSeedsAreDeterministicAndDistinct) {
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
  EXPECT_NE(derive_seed(7, 3), derive_seed(7, 4));
  EXPECT_NE(derive_seed(7, 3), derive_seed(8, 3));
  CounterRng a(11), b(11);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a(), b());
  CounterRng c(5);
  double s = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = c.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    s += u;
  }
  EXPECT_NEAR(s / 100000, 0.5, 5e-3);
  EXPECT_EQ(CounterRng(5).at(17), [] {
    CounterRng r(5);
    for (int i = 0; i < 17; ++i) r();
    return r();
  }());
}

TEST(Trajectory, SameSeedSameRecord) {
  const auto m = qubit(0.3, 0.8, 1.0);
  const auto a = sample_trajectory(m, Ket::basis(m.layout(), {1}), 20.0, 99);
  const auto b = sample_trajectory(m, Ket::basis(m.layout(), {1}), 20.0, 99);
  ASSERT_EQ(a.events.size(), b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) EXPECT_EQ(a.events[i].time, b.events[i].time);
  EXPECT_GT(a.events.size(), 0u);
}

TEST(Trajectory, AverageMatchesMasterWithinStatisticalBound) {
  const auto m = qubit(0.3, 0.8, 1.0);
  const Ket k0 = Ket::basis(m.layout(), {1});
  const auto grid = linspace(0, 4, 9);
  const std::size_t N = 2000;
  const auto avg = trajectory_average(m, k0, N, grid, 1234);
  const auto ref = evolve_master(m, DensityMatrix::from_ket(k0), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_LE(trace_distance(avg[i], ref[i]), 3.0 / std::sqrt(double(N)));
}

TEST(Trajectory, AggregateIndependentOfThreadCount) {
  const auto m = qubit(0.3, 0.8, 1.0);
  const Ket k0 = Ket::basis(m.layout(), {1});
  const auto grid = linspace(0, 2, 5);
  const auto a = trajectory_average(m, k0, 200, grid, 77, 1);
  const auto b = trajectory_average(m, k0, 200, grid, 77, 3);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ((a[i].matrix() - b[i].matrix()).norm(), 0.0);
}

TEST(Subspace, ReducedEvolutionIsExact) {
  const auto inst = build_minimal_reservoir(1.0, 3.0);
  const Ket k0 = inst.encode(0.6, 0.8);
  const auto red = reduce_to_invariant_subspace(inst.model, {k0.amplitudes()});
  EXPECT_LT(red.dim(), inst.model.dim());
  const auto grid = linspace(0, 5, 11);
  const auto full = evolve_master(inst.model, DensityMatrix::from_ket(k0), grid);
  const Vec r0 = red.reduce(k0.amplitudes());
  std::vector<Mat> small;
  evolve_master_observe(red.model, r0 * r0.adjoint(), grid, {}, [&](std::size_t, double, const Mat& r) {
    small.push_back(red.lift(r));
    return true;
  });
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_LT(trace_distance(small[i], full[i].matrix()), 1e-9);
}

TEST(Propagator, AgreesWithAdaptiveIntegrator) {
  const auto m = qubit(1.0, 0.7, 0.4);
  const Vec e = Ket::basis(m.layout(), {1}).amplitudes();
  const auto grid = linspace(0, 8, 17);
  std::vector<Mat> a, b;
  evolve_master_observe(m, e * e.adjoint(), grid, {}, [&](std::size_t, double, const Mat& r) {
    a.push_back(r);
    return true;
  });
  evolve_master_propagator_observe(m, e * e.adjoint(), grid, [&](std::size_t, double, const Mat& r) {
    b.push_back(r);
    return true;
  });
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_LT((a[i] - b[i]).norm(), 1e-8);
}

TEST(Propagator, ObserverCanStopEarly) {
  const auto m = qubit(1.0, 0.7, 0.4);
  const Vec e = Ket::basis(m.layout(), {1}).amplitudes();
  std::size_t calls = 0;
  evolve_master_propagator_observe(m, e * e.adjoint(), linspace(0, 1, 11), [&](std::size_t i, double, const Mat&) {
    ++calls;
    return i < 3;
  });
  EXPECT_EQ(calls, 4u);
}
