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

#include <functional>
#include <stdexcept>
#include <vector>

#include "aqst/dynamics/integrator.hpp"
#include "aqst/dynamics/model.hpp"

namespace aqst {

// d rho/dt = -i(H_eff rho - rho H_eff^dag) + sum L rho L^dag.
// Valid for any square input, Hermitian or not.
inline void lindblad_rhs_into(const LindbladModel& model, const Mat& rho, Mat& out) {
  const SpMat& he = model.heff();
  Mat left = he * rho;                              // H_eff rho
  Mat right = (he * rho.adjoint()).adjoint();      // rho H_eff^dag
  out = -kI * (left - right);
  for (std::size_t k = 0; k < model.jumps().size(); ++k) {
    Mat lr = model.jump_sparse(k) * rho;           // L rho
    out.noalias() += (model.jump_sparse(k) * lr.adjoint()).adjoint();  // L rho L^dag
  }
}

inline DensityMatrix lindblad_rhs(const LindbladModel& model, const DensityMatrix& rho) {
  if (!same_layout(model.layout(), rho.layout())) throw LayoutError("lindblad_rhs: layout mismatch");
  Mat out;
  lindblad_rhs_into(model, rho.matrix(), out);
  return DensityMatrix(model.layout(), 0.5 * (out + out.adjoint()));
}

namespace detail {
inline IntegratorOptions resolve_fixed_dt(IntegratorOptions opt, const LindbladModel& model) {
  if (opt.fixed_step && !(opt.fixed_dt > 0.0))
    opt.fixed_dt = model.largest_rate() > 0.0 ? 0.01 / model.largest_rate() : 1e-2;
  if (opt.fixed_step && model.largest_rate() > 0.0) opt.fixed_dt = std::min(opt.fixed_dt, 0.01 / model.largest_rate());
  return opt;
}

inline void check_grid(const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("time grid is empty");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] >= t_grid[i - 1])) throw std::invalid_argument("time grid must be non-decreasing");
}
}  // namespace detail

// Observer receives (grid index, t, rho). Returning false stops early.
using MasterObserver = std::function<bool(std::size_t, double, const Mat&)>;

inline IntegratorStats evolve_master_observe(const LindbladModel& model, const Mat& rho0,
                                             const std::vector<double>& t_grid, const IntegratorOptions& opt,
                                             const MasterObserver& observe) {
  detail::check_grid(t_grid);
  DormandPrince5<Mat> dp(
      [&model](double, const Mat& y, Mat& dy) { lindblad_rhs_into(model, y, dy); },
      detail::resolve_fixed_dt(opt, model));
  Mat y = rho0;
  double t = t_grid.front();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    dp.advance(t, y, t_grid[i]);
    y = 0.5 * (y + y.adjoint()).eval();  // remove rounding-level anti-Hermitian drift
    if (!observe(i, t, y)) break;
  }
  return dp.stats();
}

inline std::vector<DensityMatrix> evolve_master(const LindbladModel& model, const DensityMatrix& rho0,
                                                const std::vector<double>& t_grid,
                                                const IntegratorOptions& opt = {}) {
  if (!same_layout(model.layout(), rho0.layout())) throw LayoutError("evolve_master: layout mismatch");
  const auto phys = rho0.physicality();
  if (!phys.ok()) throw std::invalid_argument("evolve_master: initial state not physical (trace " +
                                              std::to_string(phys.trace_real) + ", min eigenvalue " +
                                              std::to_string(phys.min_eigenvalue) + ")");
  std::vector<DensityMatrix> out;
  out.reserve(t_grid.size());
  evolve_master_observe(model, rho0.matrix(), t_grid, opt, [&](std::size_t, double, const Mat& r) {
    out.emplace_back(model.layout(), r);
    return true;
  });
  return out;
}

}  // namespace aqst
