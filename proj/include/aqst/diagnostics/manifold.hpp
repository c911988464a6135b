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

#include <vector>

#include "aqst/dynamics/model.hpp"

namespace aqst {

struct ManifoldEntry {
  double energy = 0.0;                 // <phi|H|phi>
  double eigen_residual = 0.0;         // |H phi - <H> phi|
  std::vector<double> jump_norms;      // |L_k phi|
  bool is_H_eigenstate = false;
  bool dark = false;
};

struct ManifoldReport {
  std::vector<ManifoldEntry> states;
  std::vector<std::string> channels;
  double tol = 0.0;
  bool verdict = false;
};

// Every state must be annihilated by every jump and be an eigenstate of H,
// both within tol.
inline ManifoldReport check_dark_manifold(const LindbladModel& model, const std::vector<Ket>& states,
                                          double tol = 1e-10) {
  ManifoldReport r;
  r.tol = tol;
  for (const auto& j : model.jumps()) r.channels.push_back(j.label);
  r.verdict = !states.empty();
  const Mat& H = model.hamiltonian().matrix();
  for (const auto& s : states) {
    if (!same_layout(s.layout(), model.layout())) throw LayoutError("check_dark_manifold: layout mismatch");
    if (!s.is_normalized()) throw std::invalid_argument("check_dark_manifold: states must be normalized");
    const Vec& v = s.amplitudes();
    ManifoldEntry e;
    const Vec hv = H * v;
    const cplx E = v.dot(hv);
    e.energy = E.real();
    e.eigen_residual = (hv - E * v).norm();
    e.is_H_eigenstate = e.eigen_residual <= tol;
    e.dark = true;
    for (std::size_t k = 0; k < model.jumps().size(); ++k) {
      e.jump_norms.push_back((model.jump_sparse(k) * v).norm());
      if (e.jump_norms.back() > tol) e.dark = false;
    }
    r.verdict = r.verdict && e.dark && e.is_H_eigenstate;
    r.states.push_back(std::move(e));
  }
  return r;
}

}  // namespace aqst
