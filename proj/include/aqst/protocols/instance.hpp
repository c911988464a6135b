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
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "aqst/dynamics/model.hpp"

namespace aqst {

// A named sector of the global state ("where the qubit is") with the two
// kets spanning the logical space there.
struct PositionSector {
  std::string label;
  std::array<Ket, 2> logical;

  Operator projector() const {
    const Vec& a = logical[0].amplitudes();
    const Vec& b = logical[1].amplitudes();
    return Operator(logical[0].layout(), a * a.adjoint() + b * b.adjoint());
  }
};

struct ProtocolInstance {
  std::string name;
  LindbladModel model;
  std::array<Ket, 2> initial_basis;  // encode(1,0), encode(0,1)
  std::array<Ket, 2> target_basis;   // target(1,0), target(0,1)
  std::vector<Ket> dark_targets;     // expected stationary dark manifold
  std::vector<std::pair<std::string, Ket>> aux_states;
  std::vector<PositionSector> positions;
  std::map<std::string, double> params;
  std::vector<std::string> warnings;

  Ket encode(cplx alpha, cplx beta) const { return combine(initial_basis, alpha, beta); }
  Ket target(cplx alpha, cplx beta) const { return combine(target_basis, alpha, beta); }

  const Ket& aux(const std::string& key) const {
    for (const auto& [k, v] : aux_states)
      if (k == key) return v;
    throw LayoutError("instance '" + name + "' has no auxiliary state '" + key + "'");
  }

  const LayoutPtr& layout() const noexcept { return model.layout(); }

 private:
  static Ket combine(const std::array<Ket, 2>& b, cplx alpha, cplx beta) {
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(n2 - 1.0) > 1e-9)
      throw std::invalid_argument("logical amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
    Vec v = alpha * b[0].amplitudes() + beta * b[1].amplitudes();
    return Ket::normalized(b[0].layout(), std::move(v));
  }
};

// Checks the ProtocolInstance invariants; throws LayoutError on violation.
inline void validate_instance(const ProtocolInstance& p) {
  auto orth = [&](const std::array<Ket, 2>& b, const char* what) {
    for (const auto& k : b)
      if (!same_layout(k.layout(), p.layout())) throw LayoutError(p.name + ": " + what + " ket on wrong layout");
    if (std::abs(b[0].inner(b[1])) > 1e-12) throw LayoutError(p.name + ": " + what + " basis not orthogonal");
  };
  orth(p.initial_basis, "initial");
  orth(p.target_basis, "target");
}

struct CardinalPoint {
  const char* name;
  cplx alpha;
  cplx beta;
};

inline std::array<CardinalPoint, 6> cardinal_points() {
  const double s = 1.0 / std::sqrt(2.0);
  return {{{"+Z", 1.0, 0.0},
           {"-Z", 0.0, 1.0},
           {"+X", s, s},
           {"-X", s, -s},
           {"+Y", s, cplx(0.0, s)},
           {"-Y", s, cplx(0.0, -s)}}};
}

}  // namespace aqst
