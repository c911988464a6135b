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
#include <string>
#include <vector>

#include "aqst/core/algebra.hpp"
#include "aqst/protocols/instance.hpp"

namespace aqst {

struct PositionEntry {
  std::string label;
  double probability = 0.0;
  bool populated = false;      // probability > 1e-9
  Eigen::Matrix2cd conditional = Eigen::Matrix2cd::Zero();
  double purity = 0.0;
  double relative_phase = 0.0;  // arg(beta alpha*) of the conditional state
};

struct SeparabilityReport {
  std::vector<PositionEntry> positions;
  double probability_sum = 0.0;
  double min_pairwise_fidelity = 1.0;
  double min_purity = 1.0;
  double tol = 0.0;
  bool separable = false;
};

namespace detail {
inline double fidelity2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> ea(0.5 * (a + a.adjoint()));
  const Eigen::Vector2d s = ea.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix2cd sa = ea.eigenvectors() * s.asDiagonal() * ea.eigenvectors().adjoint();
  const Eigen::Matrix2cd m = sa * b * sa;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> em(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const double t = em.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::min(1.0, t * t);
}
}  // namespace detail

// Splits rho into position sectors and compares the conditional logical
// states. Separable when every populated sector holds the same pure state
// (pairwise fidelity and purity >= 1 - tol). Sectors with p <= 1e-9 are skipped.
inline SeparabilityReport logical_position_decomposition(const DensityMatrix& rho,
                                                         const std::vector<PositionSector>& positions,
                                                         double tol = 1e-6) {
  SeparabilityReport r;
  r.tol = tol;
  std::vector<Operator> P;
  for (const auto& pos : positions) {
    for (const auto& k : pos.logical)
      if (!same_layout(k.layout(), rho.layout())) throw LayoutError("position '" + pos.label + "' on wrong layout");
    P.push_back(pos.projector());
  }
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = i + 1; j < P.size(); ++j)
      if ((P[i].matrix() * P[j].matrix()).cwiseAbs().maxCoeff() > 1e-10)
        throw LayoutError("positions '" + positions[i].label + "' and '" + positions[j].label + "' overlap");

  const Mat& m = rho.matrix();
  std::vector<std::size_t> populated;
  for (const auto& pos : positions) {
    PositionEntry e;
    e.label = pos.label;
    Eigen::Matrix2cd c;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) c(a, b) = pos.logical[a].amplitudes().dot(m * pos.logical[b].amplitudes());
    e.probability = c.trace().real();
    r.probability_sum += e.probability;
    e.populated = e.probability > 1e-9;
    if (e.populated) {
      e.conditional = c / e.probability;
      e.purity = (e.conditional * e.conditional).trace().real();
      e.relative_phase = std::arg(e.conditional(1, 0));
      populated.push_back(r.positions.size());
      r.min_purity = std::min(r.min_purity, e.purity);
    }
    r.positions.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < populated.size(); ++i)
    for (std::size_t j = i + 1; j < populated.size(); ++j)
      r.min_pairwise_fidelity = std::min(r.min_pairwise_fidelity,
                                         detail::fidelity2(r.positions[populated[i]].conditional,
                                                           r.positions[populated[j]].conditional));
  r.separable = !populated.empty() && r.min_purity >= 1.0 - tol && r.min_pairwise_fidelity >= 1.0 - tol;
  return r;
}

}  // namespace aqst
