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

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "aqst/core/layout.hpp"

namespace aqst {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

namespace detail {
inline void require_layout(const LayoutPtr& l) {
  if (!l) throw LayoutError("null layout");
}
inline double hermiticity_defect(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}
}  // namespace detail

class Operator {
 public:
  Operator(LayoutPtr layout, Mat m) : layout_(std::move(layout)), m_(std::move(m)) {
    detail::require_layout(layout_);
    const auto n = static_cast<Eigen::Index>(layout_->total_dim());
    if (m_.rows() != n || m_.cols() != n)
      throw LayoutError("operator is " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
                        " but layout dimension is " + std::to_string(n));
  }

  static Operator identity(LayoutPtr layout) {
    const auto n = static_cast<Eigen::Index>(layout->total_dim());
    return Operator(std::move(layout), Mat::Identity(n, n));
  }
  static Operator zero(LayoutPtr layout) {
    const auto n = static_cast<Eigen::Index>(layout->total_dim());
    return Operator(std::move(layout), Mat::Zero(n, n));
  }

  const LayoutPtr& layout() const noexcept { return layout_; }
  const Mat& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  Operator adjoint() const { return Operator(layout_, m_.adjoint()); }
  bool is_hermitian(double tol = 1e-10) const { return detail::hermiticity_defect(m_) <= tol; }

  Operator operator+(const Operator& o) const { check(o); return Operator(layout_, m_ + o.m_); }
  Operator operator-(const Operator& o) const { check(o); return Operator(layout_, m_ - o.m_); }
  Operator operator*(const Operator& o) const { check(o); return Operator(layout_, m_ * o.m_); }
  Operator operator*(cplx s) const { return Operator(layout_, m_ * s); }
  friend Operator operator*(cplx s, const Operator& o) { return o * s; }

 private:
  void check(const Operator& o) const {
    if (!same_layout(layout_, o.layout_)) throw LayoutError("operator layouts differ");
  }
  LayoutPtr layout_;
  Mat m_;
};

class Ket {
 public:
  static constexpr double kNormTol = 1e-12;

  Ket(LayoutPtr layout, Vec v, bool normalized = true)
      : layout_(std::move(layout)), v_(std::move(v)), normalized_(normalized) {
    detail::require_layout(layout_);
    if (v_.size() != static_cast<Eigen::Index>(layout_->total_dim()))
      throw LayoutError("ket length " + std::to_string(v_.size()) + " does not match layout dimension " +
                        std::to_string(layout_->total_dim()));
    if (normalized_ && std::abs(v_.squaredNorm() - 1.0) >= kNormTol)
      throw LayoutError("ket flagged normalized but |psi|^2 = " + std::to_string(v_.squaredNorm()));
  }

  // Basis state from per-mode levels.
  static Ket basis(LayoutPtr layout, const std::vector<std::size_t>& levels) {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(layout->total_dim()));
    v(static_cast<Eigen::Index>(layout->index(levels))) = 1.0;
    return Ket(std::move(layout), std::move(v), true);
  }

  // Normalizes the given vector; rejects the zero vector.
  static Ket normalized(LayoutPtr layout, Vec v) {
    const double n = v.norm();
    if (n == 0.0) throw LayoutError("cannot normalize zero vector");
    v /= n;
    // renormalize once more so the 1e-12 invariant holds after rounding
    v /= v.norm();
    return Ket(std::move(layout), std::move(v), true);
  }

  const LayoutPtr& layout() const noexcept { return layout_; }
  const Vec& amplitudes() const noexcept { return v_; }
  bool is_normalized() const noexcept { return normalized_; }
  double norm_squared() const { return v_.squaredNorm(); }

  cplx inner(const Ket& o) const {
    if (!same_layout(layout_, o.layout_)) throw LayoutError("ket layouts differ");
    return v_.dot(o.v_);  // conjugates the left argument
  }

 private:
  LayoutPtr layout_;
  Vec v_;
  bool normalized_;
};

struct Physicality {
  double trace_real = 0.0;
  double trace_imag = 0.0;
  double min_eigenvalue = 0.0;
  double hermiticity_defect = 0.0;

  bool ok(double trace_tol = 1e-9, double eig_tol = 1e-9) const {
    return std::abs(trace_real - 1.0) <= trace_tol && std::abs(trace_imag) <= trace_tol &&
           min_eigenvalue >= -eig_tol;
  }
};

// Hermitian to 1e-10 at construction. Trace and positivity are reported by
// physicality() and never clipped.
class DensityMatrix {
 public:
  static constexpr double kHermTol = 1e-10;

  DensityMatrix(LayoutPtr layout, Mat m) : layout_(std::move(layout)), m_(std::move(m)) {
    detail::require_layout(layout_);
    const auto n = static_cast<Eigen::Index>(layout_->total_dim());
    if (m_.rows() != n || m_.cols() != n) throw LayoutError("density matrix shape does not match layout");
    const double d = detail::hermiticity_defect(m_);
    if (d > kHermTol) throw LayoutError("density matrix not Hermitian (defect " + std::to_string(d) + ")");
  }

  static DensityMatrix from_ket(const Ket& k) {
    const Vec& v = k.amplitudes();
    return DensityMatrix(k.layout(), v * v.adjoint());
  }

  const LayoutPtr& layout() const noexcept { return layout_; }
  const Mat& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  cplx trace() const { return m_.trace(); }
  double purity() const { return (m_ * m_).trace().real(); }

  Physicality physicality() const {
    Physicality p;
    p.trace_real = m_.trace().real();
    p.trace_imag = m_.trace().imag();
    p.hermiticity_defect = detail::hermiticity_defect(m_);
    Eigen::SelfAdjointEigenSolver<Mat> es(m_, Eigen::EigenvaluesOnly);
    p.min_eigenvalue = es.eigenvalues().minCoeff();
    return p;
  }

  cplx element(const Ket& bra, const Ket& ket) const {
    return bra.amplitudes().dot(m_ * ket.amplitudes());
  }

 private:
  LayoutPtr layout_;
  Mat m_;
};

}  // namespace aqst
