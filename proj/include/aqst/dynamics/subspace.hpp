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

#include <deque>
#include <vector>

#include "aqst/dynamics/model.hpp"

namespace aqst {

// A model restricted to an exactly invariant subspace V = span(Q).
struct ReducedModel {
  LindbladModel model;
  Mat basis;  // n x m, orthonormal columns

  Vec reduce(const Vec& v) const { return basis.adjoint() * v; }
  Vec lift(const Vec& v) const { return basis * v; }
  Mat reduce(const Mat& rho) const { return basis.adjoint() * rho * basis; }
  Mat lift(const Mat& rho) const { return basis * rho * basis.adjoint(); }
  Eigen::Index dim() const { return basis.cols(); }
};

// Smallest subspace containing the seeds and closed under H, every L_k and
// every L_k^dag L_k. Master and no-jump evolution started inside it never
// leave it, so the restricted model Q^dag X Q is exact there.
inline ReducedModel reduce_to_invariant_subspace(const LindbladModel& model, const std::vector<Vec>& seeds,
                                                 double tol = 1e-12) {
  const Eigen::Index n = model.dim();
  std::vector<const SpMat*> gens;
  const SpMat h = model.hamiltonian().matrix().sparseView(cplx(0.0), 1e-300);
  gens.push_back(&h);
  for (std::size_t k = 0; k < model.jumps().size(); ++k) {
    gens.push_back(&model.jump_sparse(k));
    gens.push_back(&model.ldl_sparse(k));
  }

  std::vector<Vec> basis;
  std::deque<std::size_t> pending;
  auto try_add = [&](Vec v) {
    const double scale = v.norm();
    if (scale == 0.0) return;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) v -= q.dot(v) * q;
    const double r = v.norm();
    if (r <= tol * std::max(1.0, scale)) return;
    basis.push_back(v / r);
    pending.push_back(basis.size() - 1);
  };
  for (const auto& s : seeds) {
    if (s.size() != n) throw LayoutError("reduce_to_invariant_subspace: seed length mismatch");
    try_add(s);
  }
  while (!pending.empty()) {
    const std::size_t i = pending.front();
    pending.pop_front();
    for (const SpMat* g : gens) try_add(Vec(*g * basis[i]));
  }
  if (basis.empty()) throw LayoutError("reduce_to_invariant_subspace: all seeds are zero");
  if (basis.size() == 1) {
    // layouts need dim >= 2; pad with any orthogonal direction (never populated)
    for (Eigen::Index j = 0; j < n && basis.size() < 2; ++j) {
      Vec e = Vec::Zero(n);
      e(j) = 1.0;
      for (const auto& q : basis) e -= q.dot(e) * q;
      if (e.norm() > 0.5) basis.push_back(e / e.norm());
    }
  }

  const auto m = static_cast<Eigen::Index>(basis.size());
  Mat Q(n, m);
  for (Eigen::Index j = 0; j < m; ++j) Q.col(j) = basis[std::size_t(j)];

  auto layout = make_layout({{"subspace", std::size_t(m)}});
  Mat hr = Q.adjoint() * (h * Q);
  hr = 0.5 * (hr + hr.adjoint()).eval();
  std::vector<JumpChannel> jr;
  for (std::size_t k = 0; k < model.jumps().size(); ++k)
    jr.push_back({model.jumps()[k].label, Operator(layout, Q.adjoint() * (model.jump_sparse(k) * Q))});
  return ReducedModel{LindbladModel(Operator(layout, hr), std::move(jr)), std::move(Q)};
}

}  // namespace aqst
