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

#include <string>
#include <vector>

#include "aqst/dynamics/master.hpp"

namespace aqst {

struct NoJumpRecord {
  std::vector<double> times;
  std::vector<Ket> kets;                          // unnormalized
  std::vector<std::string> channel_labels;
  std::vector<std::vector<double>> channel_leak;  // [channel][time], cumulative

  double norm_squared(std::size_t i) const { return kets[i].norm_squared(); }
  double total_leak(std::size_t i) const {
    double s = 0.0;
    for (const auto& c : channel_leak) s += c[i];
    return s;
  }
  const std::vector<double>& leak(const std::string& label) const {
    for (std::size_t k = 0; k < channel_labels.size(); ++k)
      if (channel_labels[k] == label) return channel_leak[k];
    throw LayoutError("unknown jump channel '" + label + "'");
  }
};

namespace detail {
// State layout: [psi (n) | leak_0 .. leak_{K-1}]. The leak integrands ride in
// the same RK stages, so they share the stepper's quadrature order.
inline void no_jump_rhs(const LindbladModel& model, const Vec& y, Vec& dy) {
  const Eigen::Index n = model.dim();
  const auto K = static_cast<Eigen::Index>(model.jumps().size());
  dy.resize(n + K);
  const auto psi = y.head(n);
  dy.head(n) = -kI * (model.heff() * psi);
  for (Eigen::Index k = 0; k < K; ++k)
    dy(n + k) = (model.jump_sparse(std::size_t(k)) * psi).squaredNorm();
}
}  // namespace detail

using NoJumpObserver = std::function<bool(std::size_t, double, const Vec& psi, const Vec& leaks)>;

inline IntegratorStats evolve_no_jump_observe(const LindbladModel& model, const Vec& psi0,
                                              const std::vector<double>& t_grid, const IntegratorOptions& opt,
                                              const NoJumpObserver& observe) {
  detail::check_grid(t_grid);
  const Eigen::Index n = model.dim();
  const auto K = static_cast<Eigen::Index>(model.jumps().size());
  DormandPrince5<Vec> dp([&model](double, const Vec& y, Vec& dy) { detail::no_jump_rhs(model, y, dy); },
                         detail::resolve_fixed_dt(opt, model));
  Vec y = Vec::Zero(n + K);
  y.head(n) = psi0;
  double t = t_grid.front();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    dp.advance(t, y, t_grid[i]);
    if (!observe(i, t, y.head(n), y.tail(K))) break;
  }
  return dp.stats();
}

inline NoJumpRecord evolve_no_jump(const LindbladModel& model, const Ket& ket0, const std::vector<double>& t_grid,
                                   const IntegratorOptions& opt = {}) {
  if (!same_layout(model.layout(), ket0.layout())) throw LayoutError("evolve_no_jump: layout mismatch");
  if (!ket0.is_normalized()) throw std::invalid_argument("evolve_no_jump: initial ket must be normalized");
  NoJumpRecord rec;
  for (const auto& j : model.jumps()) rec.channel_labels.push_back(j.label);
  rec.channel_leak.assign(model.jumps().size(), {});
  evolve_no_jump_observe(model, ket0.amplitudes(), t_grid, opt,
                         [&](std::size_t, double t, const Vec& psi, const Vec& leaks) {
                           rec.times.push_back(t);
                           rec.kets.emplace_back(model.layout(), psi, false);
                           for (Eigen::Index k = 0; k < leaks.size(); ++k)
                             rec.channel_leak[std::size_t(k)].push_back(leaks(k).real());
                           return true;
                         });
  return rec;
}

}  // namespace aqst
