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
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "aqst/core/state.hpp"

namespace aqst {

// ---- single-mode matrices -------------------------------------------------

namespace local {

inline Mat identity(std::size_t d) { return Mat::Identity(Eigen::Index(d), Eigen::Index(d)); }

// |i><j| on a d-level mode.
inline Mat ket_bra(std::size_t d, std::size_t i, std::size_t j) {
  Mat m = Mat::Zero(Eigen::Index(d), Eigen::Index(d));
  m(Eigen::Index(i), Eigen::Index(j)) = 1.0;
  return m;
}

// Truncated harmonic lowering operator, level 0 = ground.
inline Mat lowering(std::size_t d) {
  Mat m = Mat::Zero(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t n = 1; n < d; ++n) m(Eigen::Index(n - 1), Eigen::Index(n)) = std::sqrt(double(n));
  return m;
}

inline Mat number(std::size_t d) {
  Mat m = Mat::Zero(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t n = 0; n < d; ++n) m(Eigen::Index(n), Eigen::Index(n)) = double(n);
  return m;
}

// Qubit conventions: index 0 = |g>, 1 = |e>.
inline Mat sigma_minus() { return ket_bra(2, 0, 1); }
inline Mat sigma_plus() { return ket_bra(2, 1, 0); }
// |e><e| - |g><g| with level 0 = ground.
inline Mat sigma_z() {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return m;
}

}  // namespace local

// ---- composite-space operations ------------------------------------------

inline Operator tensor(const Operator& a, const Operator& b) {
  auto layout = std::make_shared<const HilbertLayout>(HilbertLayout::concat(*a.layout(), *b.layout()));
  Mat k = Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval();
  return Operator(std::move(layout), std::move(k));
}

inline Ket tensor(const Ket& a, const Ket& b) {
  auto layout = std::make_shared<const HilbertLayout>(HilbertLayout::concat(*a.layout(), *b.layout()));
  Vec k = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval();
  return Ket(std::move(layout), std::move(k), a.is_normalized() && b.is_normalized());
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  auto layout = std::make_shared<const HilbertLayout>(HilbertLayout::concat(*a.layout(), *b.layout()));
  Mat k = Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval();
  return DensityMatrix(std::move(layout), std::move(k));
}

// Embeds a single-mode matrix at `target_label`, identity elsewhere.
inline Operator embed(const Mat& op, const std::string& target_label, const LayoutPtr& layout) {
  const std::size_t pos = layout->position(target_label);
  const std::size_t d = layout->modes()[pos].dim;
  if (op.rows() != Eigen::Index(d) || op.cols() != Eigen::Index(d))
    throw LayoutError("embed: operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                      " but mode '" + target_label + "' has dim " + std::to_string(d));
  std::size_t left = 1;
  for (std::size_t i = 0; i < pos; ++i) left *= layout->modes()[i].dim;
  const std::size_t right = layout->stride(pos);
  Mat m = Eigen::kroneckerProduct(
              Eigen::kroneckerProduct(local::identity(left), op).eval(), local::identity(right))
              .eval();
  return Operator(layout, std::move(m));
}

inline Operator embed(const Operator& op, const std::string& target_label, const LayoutPtr& layout) {
  if (op.layout()->size() != 1) throw LayoutError("embed: source operator must act on exactly one mode");
  return embed(op.matrix(), target_label, layout);
}

// Product of single-mode factors; modes not named get the identity.
inline Operator embed_product(const std::vector<std::pair<std::string, Mat>>& factors, const LayoutPtr& layout) {
  std::vector<Mat> per(layout->size());
  for (std::size_t i = 0; i < layout->size(); ++i) per[i] = local::identity(layout->modes()[i].dim);
  for (const auto& [label, m] : factors) {
    const std::size_t pos = layout->position(label);
    if (m.rows() != Eigen::Index(layout->modes()[pos].dim))
      throw LayoutError("embed_product: dimension mismatch on mode '" + label + "'");
    per[pos] = m * per[pos];
  }
  Mat acc = per[0];
  for (std::size_t i = 1; i < per.size(); ++i) acc = Eigen::kroneckerProduct(acc, per[i]).eval();
  return Operator(layout, std::move(acc));
}

// Reduced matrix on the kept modes (layout order). Keeping no modes gives the
// 1x1 matrix [Tr rho].
inline Mat partial_trace_matrix(const DensityMatrix& rho, const std::vector<std::string>& keep_labels) {
  const auto& L = *rho.layout();
  std::vector<bool> keep(L.size(), false);
  for (const auto& lbl : keep_labels) keep[L.position(lbl)] = true;

  std::size_t nk = 1, nt = 1;
  for (std::size_t i = 0; i < L.size(); ++i) (keep[i] ? nk : nt) *= L.modes()[i].dim;

  const std::size_t n = L.total_dim();
  std::vector<std::size_t> kidx(n);
  std::vector<std::vector<std::size_t>> by_traced(nt);
  for (std::size_t f = 0; f < n; ++f) {
    const auto d = L.digits(f);
    std::size_t k = 0, t = 0;
    for (std::size_t i = 0; i < L.size(); ++i) {
      if (keep[i]) k = k * L.modes()[i].dim + d[i];
      else t = t * L.modes()[i].dim + d[i];
    }
    kidx[f] = k;
    by_traced[t].push_back(f);
  }

  Mat red = Mat::Zero(Eigen::Index(nk), Eigen::Index(nk));
  const Mat& m = rho.matrix();
  for (const auto& group : by_traced)
    for (std::size_t i : group)
      for (std::size_t j : group)
        red(Eigen::Index(kidx[i]), Eigen::Index(kidx[j])) += m(Eigen::Index(i), Eigen::Index(j));
  return red;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep_labels) {
  if (keep_labels.empty()) throw LayoutError("partial_trace: keep at least one mode (see partial_trace_matrix)");
  std::vector<Mode> kept;
  for (const auto& m : rho.layout()->modes())
    if (std::find(keep_labels.begin(), keep_labels.end(), m.label) != keep_labels.end()) kept.push_back(m);
  Mat red = partial_trace_matrix(rho, keep_labels);
  return DensityMatrix(make_layout(std::move(kept)), std::move(red));
}

inline cplx expectation(const Ket& psi, const Operator& op) {
  if (!same_layout(psi.layout(), op.layout())) throw LayoutError("expectation: layout mismatch");
  return psi.amplitudes().dot(op.matrix() * psi.amplitudes());
}

inline cplx expectation(const DensityMatrix& rho, const Operator& op) {
  if (!same_layout(rho.layout(), op.layout())) throw LayoutError("expectation: layout mismatch");
  return (op.matrix() * rho.matrix()).trace();
}

namespace detail {
inline Mat psd_sqrt(const Mat& m, const char* who) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() < -1e-9)
    throw std::domain_error(std::string(who) + ": input has eigenvalue " + std::to_string(ev.minCoeff()));
  // Rounding-level eigenvalues would otherwise contribute O(sqrt(eps)).
  const double cut = 1e-14 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  Eigen::VectorXd s = ev.unaryExpr([cut](double x) { return x > cut ? std::sqrt(x) : 0.0; });
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}
}  // namespace detail

// F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0,1] against rounding.
inline double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!same_layout(rho.layout(), sigma.layout())) throw LayoutError("uhlmann_fidelity: layout mismatch");
  const Mat sr = detail::psd_sqrt(rho.matrix(), "uhlmann_fidelity");
  detail::psd_sqrt(sigma.matrix(), "uhlmann_fidelity");  // positivity check only
  Mat inner = sr * sigma.matrix() * sr;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  const double cut = 1e-14 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  const double t = es.eigenvalues().unaryExpr([cut](double x) { return x > cut ? std::sqrt(x) : 0.0; }).sum();
  return std::clamp(t * t, 0.0, 1.0);
}

// Pure-target shortcut: F = <phi|rho|phi>.
inline double fidelity(const DensityMatrix& rho, const Ket& target) {
  if (!same_layout(rho.layout(), target.layout())) throw LayoutError("fidelity: layout mismatch");
  const Vec& v = target.amplitudes();
  return v.dot(rho.matrix() * v).real();
}

inline double trace_distance(const Mat& a, const Mat& b) {
  Mat d = a - b;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (!same_layout(a.layout(), b.layout())) throw LayoutError("trace_distance: layout mismatch");
  return trace_distance(a.matrix(), b.matrix());
}

inline double operator_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace aqst
