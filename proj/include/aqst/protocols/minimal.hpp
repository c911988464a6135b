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

#include "aqst/core/algebra.hpp"
#include "aqst/protocols/instance.hpp"

namespace aqst {

// Level conventions for logical modes: 0 = |0>, 1 = |1>, 2 = |vac>.
inline constexpr std::size_t kVac = 2;

// Layout [A:3, B:3]; H = 0; L = sqrt(kappa)(|vac,0><0,vac| + |vac,1><1,vac|).
inline ProtocolInstance build_minimal_jump(double kappa) {
  if (!(kappa > 0.0)) throw ConfigError("build_minimal_jump: kappa must be > 0");
  auto l = make_layout({{"A", 3}, {"B", 3}});
  const Mat a0 = local::ket_bra(3, kVac, 0), a1 = local::ket_bra(3, kVac, 1);
  const Mat b0d = local::ket_bra(3, 0, kVac), b1d = local::ket_bra(3, 1, kVac);
  Operator L = embed_product({{"A", a0}, {"B", b0d}}, l) + embed_product({{"A", a1}, {"B", b1d}}, l);
  LindbladModel model(Operator::zero(l), {{"L", std::sqrt(kappa) * L}});

  auto k = [&](std::size_t a, std::size_t b) { return Ket::basis(l, {a, b}); };
  ProtocolInstance p{"minimal_jump",
                     std::move(model),
                     {k(0, kVac), k(1, kVac)},
                     {k(kVac, 0), k(kVac, 1)},
                     {k(kVac, 0), k(kVac, 1)},
                     {{"vacuum", k(kVac, kVac)}},
                     {{"A", {k(0, kVac), k(1, kVac)}}, {"B", {k(kVac, 0), k(kVac, 1)}}},
                     {{"kappa", kappa}},
                     {}};
  validate_instance(p);
  return p;
}

// Layout [A:3, B:3, R:2]; H = Omega0 A0 B0^dag r^dag + Omega1 A1 B1^dag r^dag + h.c.;
// jump sqrt(gamma) r. Unequal legs are only meant as a negative control.
inline ProtocolInstance build_minimal_reservoir_legs(double omega0, double omega1, double gamma) {
  if (!(omega0 >= 0.0 && omega1 >= 0.0 && gamma > 0.0))
    throw ConfigError("build_minimal_reservoir: rates must be positive (Omega >= 0, gamma > 0)");
  auto l = make_layout({{"A", 3}, {"B", 3}, {"R", 2}});
  const Mat rd = local::sigma_plus();
  Operator c0 = embed_product({{"A", local::ket_bra(3, kVac, 0)}, {"B", local::ket_bra(3, 0, kVac)}, {"R", rd}}, l);
  Operator c1 = embed_product({{"A", local::ket_bra(3, kVac, 1)}, {"B", local::ket_bra(3, 1, kVac)}, {"R", rd}}, l);
  Operator hc = cplx(omega0) * c0 + cplx(omega1) * c1;
  Operator H = hc + hc.adjoint();
  LindbladModel model(H, {{"r", std::sqrt(gamma) * embed(local::sigma_minus(), "R", l)}});

  auto k = [&](std::size_t a, std::size_t b, std::size_t r) { return Ket::basis(l, {a, b, r}); };
  ProtocolInstance p{omega0 == omega1 ? "minimal_reservoir" : "minimal_reservoir_unequal_legs",
                     std::move(model),
                     {k(0, kVac, 0), k(1, kVac, 0)},
                     {k(kVac, 0, 0), k(kVac, 1, 0)},
                     {k(kVac, 0, 0), k(kVac, 1, 0)},
                     {{"vacuum", k(kVac, kVac, 0)}},
                     {{"A", {k(0, kVac, 0), k(1, kVac, 0)}},
                      {"B*e", {k(kVac, 0, 1), k(kVac, 1, 1)}},
                      {"B", {k(kVac, 0, 0), k(kVac, 1, 0)}}},
                     {{"Omega0", omega0}, {"Omega1", omega1}, {"gamma", gamma}},
                     {}};
  if (gamma < 4.0 * std::max(omega0, omega1))
    p.warnings.push_back("underdamped reservoir (gamma < 4 Omega)");
  validate_instance(p);
  return p;
}

inline ProtocolInstance build_minimal_reservoir(double omega, double gamma) {
  if (!(omega >= 0.0)) throw ConfigError("build_minimal_reservoir: Omega must be >= 0");
  auto p = build_minimal_reservoir_legs(omega, omega, gamma);
  if (omega == 0.0) p.warnings.push_back("Omega = 0: the transfer coupling is off");
  p.params.erase("Omega0");
  p.params.erase("Omega1");
  p.params["Omega"] = omega;
  return p;
}

}  // namespace aqst
