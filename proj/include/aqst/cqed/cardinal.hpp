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
#include <vector>

#include "aqst/dynamics/propagator.hpp"
#include "aqst/protocols/instance.hpp"

namespace aqst {

struct CardinalResult {
  double best_time = 0.0;
  double best_avg_fidelity = 0.0;
  std::vector<double> times;
  std::vector<double> average;               // per grid time
  std::array<std::vector<double>, 6> curves;  // +Z, -Z, +X, -X, +Y, -Y
};

// Evolves the six logical cardinal states and averages their fidelity to the
// matching target. Targets are pure, so the Uhlmann fidelity is <phi|rho|phi>.
inline CardinalResult cardinal_average_fidelity(const ProtocolInstance& inst, const std::vector<double>& t_grid,
                                                const IntegratorOptions& opt = {},
                                                MasterMethod method = MasterMethod::kAdaptive) {
  CardinalResult res;
  res.times = t_grid;
  res.average.assign(t_grid.size(), 0.0);
  const auto pts = cardinal_points();
  for (std::size_t s = 0; s < pts.size(); ++s) {
    const Ket init = inst.encode(pts[s].alpha, pts[s].beta);
    const Ket tgt = inst.target(pts[s].alpha, pts[s].beta);
    const Vec& tv = tgt.amplitudes();
    auto& curve = res.curves[s];
    curve.resize(t_grid.size());
    const Vec& iv = init.amplitudes();
    evolve_master_with(method, inst.model, iv * iv.adjoint(), t_grid, opt, [&](std::size_t i, double, const Mat& rho) {
      curve[i] = tv.dot(rho * tv).real();
      return true;
    });
    for (std::size_t i = 0; i < t_grid.size(); ++i) res.average[i] += curve[i] / double(pts.size());
  }
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    if (i == 0 || res.average[i] > res.best_avg_fidelity) {
      res.best_avg_fidelity = res.average[i];
      res.best_time = t_grid[i];
    }
  return res;
}

}  // namespace aqst
