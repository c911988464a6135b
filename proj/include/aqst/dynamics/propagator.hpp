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
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "aqst/dynamics/master.hpp"

namespace aqst {

inline constexpr Eigen::Index kMaxPropagatorDim = 32;

// Liouvillian superoperator on column-stacked vec(rho):
//   -i (I x H_eff) + i (conj(H_eff) x I) + sum conj(L) x L.
inline Mat liouvillian(const LindbladModel& model) {
  const Eigen::Index d = model.dim();
  if (d > kMaxPropagatorDim)
    throw std::invalid_argument("liouvillian: dimension " + std::to_string(d) + " exceeds " +
                                std::to_string(kMaxPropagatorDim) + "; reduce the model first");
  const Mat I = Mat::Identity(d, d);
  const Mat& he = model.heff_dense();
  Mat S = -kI * Mat(Eigen::kroneckerProduct(I, he)) + kI * Mat(Eigen::kroneckerProduct(he.conjugate(), I));
  for (const auto& j : model.jumps()) {
    const Mat& L = j.op.matrix();
    S += Mat(Eigen::kroneckerProduct(L.conjugate(), L));
  }
  return S;
}

// Master-equation evolution by exact propagators exp(S dt), for small models.
// Propagators are cached per distinct step, so uniform grids cost one
// matrix exponential. Same observer contract as evolve_master_observe.
inline void evolve_master_propagator_observe(const LindbladModel& model, const Mat& rho0,
                                             const std::vector<double>& t_grid, const MasterObserver& observe) {
  detail::check_grid(t_grid);
  const Eigen::Index d = model.dim();
  if (rho0.rows() != d || rho0.cols() != d) throw LayoutError("evolve_master_propagator: shape mismatch");
  const Mat S = liouvillian(model);
  std::vector<std::pair<double, Mat>> cache;
  auto propagator = [&](double dt) -> const Mat& {
    for (const auto& [h, P] : cache)
      if (std::abs(h - dt) <= 1e-12 * std::max(1.0, std::abs(dt))) return P;
    cache.emplace_back(dt, Mat((S * dt).exp()));
    return cache.back().second;
  };
  Vec v = Eigen::Map<const Vec>(rho0.data(), d * d);
  Mat rho(d, d);
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (i > 0 && t_grid[i] > t_grid[i - 1]) v = propagator(t_grid[i] - t_grid[i - 1]) * v;
    rho = Eigen::Map<const Mat>(v.data(), d, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    if (!observe(i, t_grid[i], rho)) break;
  }
}

enum class MasterMethod { kAdaptive, kPropagator };

inline void evolve_master_with(MasterMethod method, const LindbladModel& model, const Mat& rho0,
                               const std::vector<double>& t_grid, const IntegratorOptions& opt,
                               const MasterObserver& observe) {
  if (method == MasterMethod::kPropagator)
    evolve_master_propagator_observe(model, rho0, t_grid, observe);
  else
    evolve_master_observe(model, rho0, t_grid, opt, observe);
}

}  // namespace aqst
