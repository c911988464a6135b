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
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "aqst/core/state.hpp"

namespace aqst::fit {

struct LinearFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

inline LinearFit linear(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit::linear: need >= 2 paired points");
  const double n = double(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit::linear: x values are all equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

// Fit of log y against log x.
inline LinearFit log_log(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw std::invalid_argument("fit::log_log: values must be positive");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return linear(lx, ly);
}

struct Pole {
  cplx rate;  // signal ~ amplitude * exp(-rate t)
  cplx amplitude;
};

// Matrix-pencil decomposition of uniformly sampled y(t0 + k dt) into `order`
// damped exponentials.
inline std::vector<Pole> matrix_pencil(const std::vector<double>& y, double dt, int order) {
  const int N = int(y.size());
  const int L = N / 2;
  if (order < 1 || N < 2 * order + 2) throw std::invalid_argument("fit::matrix_pencil: not enough samples");
  Eigen::MatrixXd H(N - L, L + 1);
  for (int i = 0; i < N - L; ++i)
    for (int j = 0; j <= L; ++j) H(i, j) = y[std::size_t(i + j)];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(H, Eigen::ComputeThinV);
  const Eigen::MatrixXd V = svd.matrixV().leftCols(order);
  const Eigen::MatrixXd V1 = V.topRows(L), V2 = V.bottomRows(L);
  const Eigen::MatrixXd A = V1.completeOrthogonalDecomposition().solve(V2);
  Eigen::EigenSolver<Eigen::MatrixXd> es(A);  // A = T^-1 diag(z) T
  const Eigen::VectorXcd z = es.eigenvalues();

  Eigen::MatrixXcd Z(N, order);
  for (int k = 0; k < N; ++k)
    for (int m = 0; m < order; ++m) Z(k, m) = std::pow(z(m), k);
  Eigen::VectorXcd yy(N);
  for (int k = 0; k < N; ++k) yy(k) = y[std::size_t(k)];
  const Eigen::VectorXcd amp = Z.completeOrthogonalDecomposition().solve(yy);

  std::vector<Pole> poles;
  for (int m = 0; m < order; ++m) poles.push_back({-std::log(z(m)) / dt, amp(m)});
  std::sort(poles.begin(), poles.end(), [](const Pole& a, const Pole& b) { return a.rate.real() < b.rate.real(); });
  return poles;
}

// Smallest decay rate among poles carrying at least rel_amp of the largest amplitude.
inline double slowest_decay_rate(const std::vector<Pole>& poles, double rel_amp = 1e-4) {
  double amax = 0.0;
  for (const auto& p : poles) amax = std::max(amax, std::abs(p.amplitude));
  for (const auto& p : poles)
    if (std::abs(p.amplitude) >= rel_amp * amax && p.rate.real() > 0.0) return p.rate.real();
  throw std::runtime_error("fit::slowest_decay_rate: no decaying pole");
}

struct GoldenResult {
  double x = 0.0, value = 0.0;
  int evaluations = 0;
};

// Maximises a unimodal f on [a, b] until the bracket is narrower than xtol.
inline GoldenResult golden_section_max(const std::function<double(double)>& f, double a, double b, double xtol,
                                       int max_iter = 200) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  int evals = 2;
  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  GoldenResult g;
  if (fc >= fd) {
    g.x = c;
    g.value = fc;
  } else {
    g.x = d;
    g.value = fd;
  }
  g.evaluations = evals;
  return g;
}

}  // namespace aqst::fit
