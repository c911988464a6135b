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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aqst/dynamics/master.hpp"
#include "aqst/protocols/instance.hpp"

namespace aqst {

struct ScheduledJump {
  double time = 0.0;
  std::string channel;
};

struct OverlapCurve {
  std::vector<double> times;
  std::vector<double> overlap;  // |<phi0|phi1>|, unnormalized
  double max() const { return overlap.empty() ? 0.0 : *std::max_element(overlap.begin(), overlap.end()); }
};

// Evolves both kets through identical no-jump segments and identical
// scheduled jumps (no renormalization) and records the overlap magnitude.
// A jump scheduled exactly at a grid time is applied after that sample.
inline OverlapCurve check_orthogonality(const LindbladModel& model, const std::pair<Ket, Ket>& pair,
                                        const std::vector<double>& t_grid,
                                        const std::vector<ScheduledJump>& schedule = {},
                                        const IntegratorOptions& opt = {}) {
  detail::check_grid(t_grid);
  const auto& [k0, k1] = pair;
  if (!same_layout(k0.layout(), model.layout()) || !same_layout(k1.layout(), model.layout()))
    throw LayoutError("check_orthogonality: layout mismatch");
  if (std::abs(k0.inner(k1)) > 1e-10) throw std::invalid_argument("check_orthogonality: pair not orthogonal at t0");
  std::vector<std::pair<double, std::size_t>> jumps;
  for (const auto& s : schedule) {
    std::size_t k = 0;
    try {
      k = model.channel_index(s.channel);
    } catch (const LayoutError&) {
      throw LayoutError("check_orthogonality: schedule names unknown channel '" + s.channel + "'");
    }
    jumps.emplace_back(s.time, k);
  }
  std::sort(jumps.begin(), jumps.end());

  const Eigen::Index n = model.dim();
  Mat Y(n, 2);
  Y.col(0) = k0.amplitudes();
  Y.col(1) = k1.amplitudes();
  DormandPrince5<Mat> dp([&model](double, const Mat& y, Mat& dy) { dy = -kI * (model.heff() * y); },
                         detail::resolve_fixed_dt(opt, model));
  OverlapCurve out;
  double t = t_grid.front();
  std::size_t ji = 0;
  while (ji < jumps.size() && jumps[ji].first < t) ++ji;  // before the window: ignored
  for (double tg : t_grid) {
    while (ji < jumps.size() && jumps[ji].first < tg) {
      dp.advance(t, Y, jumps[ji].first);
      Y = (model.jump_sparse(jumps[ji].second) * Y).eval();
      dp.reset_step();
      ++ji;
    }
    dp.advance(t, Y, tg);
    out.times.push_back(tg);
    out.overlap.push_back(std::abs(Y.col(0).dot(Y.col(1))));
  }
  return out;
}

struct LogicalOrthogonality {
  OverlapCurve z_pair;  // encode(1,0), encode(0,1)
  OverlapCurve x_pair;  // encode(+), encode(-)
  double max() const { return std::max(z_pair.max(), x_pair.max()); }
};

// The X pair also catches unequal norm decay of |0> and |1>, which the
// Z pair alone cannot see.
inline LogicalOrthogonality check_logical_orthogonality(const ProtocolInstance& inst, const std::vector<double>& t_grid,
                                                        const std::vector<ScheduledJump>& schedule = {},
                                                        const IntegratorOptions& opt = {}) {
  const double s = 1.0 / std::sqrt(2.0);
  LogicalOrthogonality r;
  r.z_pair = check_orthogonality(inst.model, {inst.initial_basis[0], inst.initial_basis[1]}, t_grid, schedule, opt);
  r.x_pair = check_orthogonality(inst.model, {inst.encode(s, s), inst.encode(s, -s)}, t_grid, schedule, opt);
  return r;
}

}  // namespace aqst
