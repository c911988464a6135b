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
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "aqst/dynamics/no_jump.hpp"
#include "aqst/dynamics/random.hpp"

namespace aqst {

struct JumpEvent {
  double time = 0.0;
  std::string channel;
  std::size_t channel_index = 0;
};

struct JumpRecord {
  std::vector<JumpEvent> events;
  Ket final_ket;
  std::uint64_t seed = 0;
  double t_final = 0.0;
  bool truncated = false;  // jumps were still possible when t_max was reached
};

namespace detail {

// Norm-threshold unraveling. Calls on_grid(i, normalized psi) at every grid
// time and on_jump(event) for each jump. Returns the final normalized psi and
// whether the total jump rate was still non-zero at the end.
template <class OnGrid, class OnJump>
std::pair<Vec, bool> unravel(const LindbladModel& model, Vec psi, const std::vector<double>& t_grid, CounterRng& rng,
                             const IntegratorOptions& opt, OnGrid&& on_grid, OnJump&& on_jump) {
  check_grid(t_grid);
  const auto K = model.jumps().size();
  DormandPrince5<Vec> dp([&model](double, const Vec& y, Vec& dy) { dy = -kI * (model.heff() * y); }, opt);
  Vec trial, mid;
  double u = rng.uniform();
  double t = t_grid.front();
  double h = 0.0;
  std::vector<double> rates(K);

  auto total_rate = [&](const Vec& v) {
    double s = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      rates[k] = (model.jump_sparse(k) * v).squaredNorm();
      s += rates[k];
    }
    return s;
  };

  for (std::size_t gi = 0; gi < t_grid.size(); ++gi) {
    const double tg = t_grid[gi];
    while (t < tg) {
      if (h <= 0.0) h = std::min(tg - t, 0.1 / std::max(model.largest_rate(), 1e-12));
      const double hs = std::min(h, tg - t);
      if (hs < opt.h_min_rel * std::max(1.0, std::abs(t))) throw NumericalError("step size underflow", t);
      const double err = dp.try_step(t, psi, hs, trial);
      if (!(err <= 1.0)) {
        h = hs * std::max(0.1, std::isfinite(err) ? 0.9 * std::pow(err, -0.2) : 0.1);
        continue;
      }
      const double fac = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
      if (trial.squaredNorm() > u) {
        psi.swap(trial);
        t = (hs == tg - t) ? tg : t + hs;
        if (hs == h) h = hs * fac;
        continue;
      }
      // threshold crossed inside (t, t + hs]: bisect the step length
      double lo = 0.0, hi = hs;
      mid = trial;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, t); ++it) {
        const double hm = 0.5 * (lo + hi);
        dp.try_step(t, psi, hm, mid);
        const double n2 = mid.squaredNorm();
        if (std::abs(n2 - u) <= 1e-13) {
          lo = hi = hm;
          break;
        }
        if (n2 > u) lo = hm;
        else hi = hm;
      }
      dp.try_step(t, psi, hi, mid);
      t += hi;
      psi.swap(mid);
      const double R = total_rate(psi);
      if (R > 0.0) {
        double pick = rng.uniform() * R;
        std::size_t k = 0;
        for (; k + 1 < K; ++k) {
          if (pick < rates[k]) break;
          pick -= rates[k];
        }
        psi = (model.jump_sparse(k) * psi).eval();
        on_jump(JumpEvent{t, model.jumps()[k].label, k});
      }
      psi /= psi.norm();
      u = rng.uniform();
    }
    const double nrm = psi.norm();
    on_grid(gi, Vec(psi / nrm));
  }
  const bool still_leaking = total_rate(psi) / psi.squaredNorm() > 1e-12;
  return {Vec(psi / psi.norm()), still_leaking};
}

}  // namespace detail

inline JumpRecord sample_trajectory(const LindbladModel& model, const Ket& ket0, double t_max, std::uint64_t seed,
                                    const IntegratorOptions& opt = {}) {
  if (!same_layout(model.layout(), ket0.layout())) throw LayoutError("sample_trajectory: layout mismatch");
  if (!ket0.is_normalized()) throw std::invalid_argument("sample_trajectory: initial ket must be normalized");
  CounterRng rng(seed);
  std::vector<JumpEvent> events;
  auto [psi, leaking] = detail::unravel(
      model, ket0.amplitudes(), {0.0, t_max}, rng, opt, [](std::size_t, const Vec&) {},
      [&](const JumpEvent& e) { events.push_back(e); });
  JumpRecord rec{std::move(events), Ket::normalized(model.layout(), psi), seed, t_max, leaking};
  return rec;
}

// Empirical average of |psi><psi| over N trajectories. Trajectory j uses
// sub-seed derive_seed(seed, j). Trajectories are grouped in fixed chunks and
// chunk sums are added in chunk order, so the result does not depend on the
// thread count.
inline std::vector<DensityMatrix> trajectory_average(const LindbladModel& model, const Ket& ket0, std::size_t N,
                                                     const std::vector<double>& t_grid, std::uint64_t seed,
                                                     unsigned threads = 1, const IntegratorOptions& opt = {}) {
  if (N < 1) throw std::invalid_argument("trajectory_average: N must be >= 1");
  if (!same_layout(model.layout(), ket0.layout())) throw LayoutError("trajectory_average: layout mismatch");
  detail::check_grid(t_grid);
  constexpr std::size_t kChunk = 32;
  const std::size_t n_chunks = (N + kChunk - 1) / kChunk;
  const Eigen::Index n = model.dim();
  const std::size_t G = t_grid.size();
  threads = std::max(1u, threads);

  std::vector<Mat> total(G, Mat::Zero(n, n));
  auto run_chunk = [&](std::size_t c, std::vector<Mat>& acc) {
    acc.assign(G, Mat::Zero(n, n));
    const std::size_t end = std::min(N, (c + 1) * kChunk);
    for (std::size_t j = c * kChunk; j < end; ++j) {
      CounterRng rng(derive_seed(seed, j));
      detail::unravel(
          model, ket0.amplitudes(), t_grid, rng, opt,
          [&](std::size_t gi, const Vec& psi) { acc[gi].noalias() += psi * psi.adjoint(); },
          [](const JumpEvent&) {});
    }
  };

  std::vector<std::vector<Mat>> bufs(threads);
  for (std::size_t wave = 0; wave < n_chunks; wave += threads) {
    const std::size_t count = std::min<std::size_t>(threads, n_chunks - wave);
    if (count == 1) {
      run_chunk(wave, bufs[0]);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errs(count);
      for (std::size_t w = 0; w < count; ++w)
        pool.emplace_back([&, w] {
          try {
            run_chunk(wave + w, bufs[w]);
          } catch (...) {
            errs[w] = std::current_exception();
          }
        });
      for (auto& th : pool) th.join();
      for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    }
    for (std::size_t w = 0; w < count; ++w)
      for (std::size_t g = 0; g < G; ++g) total[g] += bufs[w][g];
  }

  std::vector<DensityMatrix> out;
  out.reserve(G);
  for (auto& m : total) out.emplace_back(model.layout(), m / double(N));
  return out;
}

}  // namespace aqst
