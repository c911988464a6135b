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

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "aqst/core/algebra.hpp"

namespace aqst {

using SpMat = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

struct JumpChannel {
  std::string label;
  Operator op;
};

// Hamiltonian (rad/us) plus jump channels on one layout. Sparse copies of
// H_eff, L_k and L_k^dag L_k are built once; the public surface stays dense.
class LindbladModel {
 public:
  LindbladModel(Operator hamiltonian, std::vector<JumpChannel> jumps)
      : h_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
    const double defect = detail::hermiticity_defect(h_.matrix());
    if (defect > 1e-10) throw LayoutError("Hamiltonian not Hermitian (defect " + std::to_string(defect) + ")");
    for (std::size_t i = 0; i < jumps_.size(); ++i) {
      if (!same_layout(jumps_[i].op.layout(), h_.layout()))
        throw LayoutError("jump '" + jumps_[i].label + "' is on a different layout");
      for (std::size_t j = 0; j < i; ++j)
        if (jumps_[j].label == jumps_[i].label) throw LayoutError("duplicate jump label '" + jumps_[i].label + "'");
    }
    compile();
  }

  const LayoutPtr& layout() const noexcept { return h_.layout(); }
  const Operator& hamiltonian() const noexcept { return h_; }
  const std::vector<JumpChannel>& jumps() const noexcept { return jumps_; }
  Eigen::Index dim() const noexcept { return h_.dim(); }

  std::size_t channel_index(const std::string& label) const {
    for (std::size_t i = 0; i < jumps_.size(); ++i)
      if (jumps_[i].label == label) return i;
    throw LayoutError("unknown jump channel '" + label + "'");
  }

  // Dense H_eff = H - (i/2) sum L^dag L.
  const Mat& heff_dense() const noexcept { return c_->heff_dense; }
  const SpMat& heff() const noexcept { return c_->heff; }
  const SpMat& jump_sparse(std::size_t k) const { return c_->l[k]; }
  const SpMat& jump_sparse_adj(std::size_t k) const { return c_->ladj[k]; }
  const SpMat& ldl_sparse(std::size_t k) const { return c_->ldl[k]; }

  // Largest rate scale, used for the fixed-step fallback.
  double largest_rate() const noexcept { return c_->largest_rate; }

 private:
  struct Compiled {
    Mat heff_dense;
    SpMat heff;
    std::vector<SpMat> l, ladj, ldl;
    double largest_rate = 0.0;
  };

  static SpMat sparse(const Mat& m) { return m.sparseView(cplx(0.0), 1e-300); }

  void compile() {
    auto c = std::make_shared<Compiled>();
    Mat heff = h_.matrix();
    double lr = h_.matrix().cwiseAbs().rowwise().sum().maxCoeff();
    for (const auto& j : jumps_) {
      Mat ldl = j.op.matrix().adjoint() * j.op.matrix();
      heff -= 0.5 * kI * ldl;
      c->l.push_back(sparse(j.op.matrix()));
      c->ladj.push_back(sparse(j.op.matrix().adjoint()));
      c->ldl.push_back(sparse(ldl));
      lr = std::max(lr, ldl.cwiseAbs().rowwise().sum().maxCoeff());
    }
    c->heff_dense = heff;
    c->heff = sparse(heff);
    c->largest_rate = lr;
    c_ = std::move(c);
  }

  Operator h_;
  std::vector<JumpChannel> jumps_;
  std::shared_ptr<const Compiled> c_;
};

inline Operator effective_hamiltonian(const LindbladModel& model) {
  return Operator(model.layout(), model.heff_dense());
}

}  // namespace aqst
