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
#include <cstddef>
#include <functional>

#include "aqst/error.hpp"

namespace aqst {

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 0.0;           // 0: pick automatically
  double h_min_rel = 1e-14;      // underflow when h < h_min_rel * max(1, |t|)
  std::size_t max_steps = 200'000'000;
  bool fixed_step = false;       // fallback mode
  double fixed_dt = 0.0;         // 0: caller resolves to 0.01 / largest rate
};

struct IntegratorStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
};

// Dormand-Prince 5(4) with FSAL, for any Eigen dense State (vector or matrix).
template <class State>
class DormandPrince5 {
 public:
  using Rhs = std::function<void(double, const State&, State&)>;

  DormandPrince5(Rhs f, IntegratorOptions opt) : f_(std::move(f)), opt_(opt) {}

  const IntegratorStats& stats() const noexcept { return stats_; }
  const IntegratorOptions& options() const noexcept { return opt_; }
  double last_step() const noexcept { return h_; }

  // One trial step of size h from (t, y). Writes the 5th-order solution to
  // ynew and returns the scaled error norm (<= 1 means acceptable).
  double try_step(double t, const State& y, double h, State& ynew) {
    eval(t, y, k1_);
    return stage_step(t, y, h, ynew);
  }

  // Integrates y from t to t_end, landing exactly on t_end.
  void advance(double& t, State& y, double t_end) {
    if (t_end <= t) return;
    if (opt_.fixed_step) return advance_fixed(t, y, t_end);

    eval(t, y, k1_);
    if (h_ <= 0.0) h_ = opt_.h_init > 0.0 ? opt_.h_init : initial_step(t, y, t_end - t);
    std::size_t steps = 0;
    while (t < t_end) {
      if (++steps > opt_.max_steps) throw NumericalError("step budget exhausted", t);
      bool last = false;
      double h = h_;
      if (t + h >= t_end) {
        h = t_end - t;
        last = true;
      }
      if (h < opt_.h_min_rel * std::max(1.0, std::abs(t))) throw NumericalError("step size underflow", t);

      const double err = stage_step(t, y, h, ynew_);
      if (!std::isfinite(err)) {
        ++stats_.rejected;
        h_ = 0.1 * h;
        if (h_ < opt_.h_min_rel * std::max(1.0, std::abs(t))) throw NumericalError("non-finite state", t);
        continue;
      }
      if (err <= 1.0) {
        ++stats_.accepted;
        t = last ? t_end : t + h;
        y.swap(ynew_);
        k1_.swap(k7_);  // FSAL
        const double fac = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
        // do not let a short final step shrink the remembered step
        if (!last) h_ = h * fac;
        else h_ = std::max(h_, h * fac);
      } else {
        ++stats_.rejected;
        h_ = h * std::max(0.1, 0.9 * std::pow(err, -0.2));
      }
    }
  }

  void reset_step() noexcept { h_ = 0.0; }

 private:
  void eval(double t, const State& y, State& out) {
    f_(t, y, out);
    ++stats_.rhs_evals;
  }

  void advance_fixed(double& t, State& y, double t_end) {
    if (!(opt_.fixed_dt > 0.0)) throw NumericalError("fixed-step mode needs a positive dt", t);
    const auto n = static_cast<std::size_t>(std::ceil((t_end - t) / opt_.fixed_dt - 1e-12));
    const double t0 = t;
    const double h = (t_end - t0) / double(std::max<std::size_t>(n, 1));
    for (std::size_t i = 0; i < std::max<std::size_t>(n, 1); ++i) {
      eval(t, y, k1_);
      stage_step(t, y, h, ynew_);
      if (!ynew_.allFinite()) throw NumericalError("non-finite state in fixed-step mode", t);
      y.swap(ynew_);
      ++stats_.accepted;
      t = (i + 1 == std::max<std::size_t>(n, 1)) ? t_end : t0 + double(i + 1) * h;
    }
  }

  double initial_step(double t, const State& y, double span) {
    // Hairer-Norsett-Wanner heuristic.
    const double d0 = scaled_norm(y, y);
    const double d1 = scaled_norm(k1_, y);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    State y1 = y + h0 * k1_;
    State f1;
    eval(t + h0, y1, f1);
    const double d2 = scaled_norm(f1 - k1_, y) / h0;
    const double m = std::max(d1, d2);
    const double h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 0.2);
    return std::min({100.0 * h0, h1, span});
  }

  template <class E>
  double scaled_norm(const E& v, const State& ref) const {
    const auto sc = (opt_.atol + opt_.rtol * ref.array().abs()).eval();
    return std::sqrt((v.array().abs() / sc).square().mean());
  }

  // k1_ must hold f(t, y). Fills k2..k7 and ynew, returns error norm.
  double stage_step(double t, const State& y, double h, State& ynew) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    tmp_ = y + h * (a21 * k1_);
    eval(t + c2 * h, tmp_, k2_);
    tmp_ = y + h * (a31 * k1_ + a32 * k2_);
    eval(t + c3 * h, tmp_, k3_);
    tmp_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    eval(t + c4 * h, tmp_, k4_);
    tmp_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    eval(t + c5 * h, tmp_, k5_);
    tmp_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    eval(t + h, tmp_, k6_);
    ynew = y + h * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
    eval(t + h, ynew, k7_);
    tmp_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
    const auto sc = (opt_.atol + opt_.rtol * y.array().abs().max(ynew.array().abs())).eval();
    return std::sqrt((tmp_.array().abs() / sc).square().mean());
  }

  Rhs f_;
  IntegratorOptions opt_;
  IntegratorStats stats_;
  double h_ = 0.0;
  State k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, ynew_;
};

}  // namespace aqst
