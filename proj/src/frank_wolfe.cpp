/*
 * Copyright 2026 The avgcoreset Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "avgcoreset/frank_wolfe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "avgcoreset/errors.hpp"

namespace avgcoreset {

namespace {

constexpr std::size_t kResyncInterval = 64;

// Index of the largest p_i^T v, smallest index on ties.
std::size_t argmax_inner(const PointSource& src, std::span<const double> v) {
  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for_each_point(src, [&](std::size_t i, std::span<const double> p) {
    const double val = dot(p, v);
    if (val > best_val) {
      best_val = val;
      best = i;
    }
  });
  return best;
}

}  // namespace

FwProblem::FwProblem(const PointSource& points, std::vector<double> target_weights,
                     std::size_t iterations)
    : points_(&points), target_(std::move(target_weights)), iterations_(iterations) {
  const std::size_t n = points.size();
  const std::size_t d = points.dim();
  if (n == 0 || d == 0) throw InvalidInput("Frank-Wolfe problem needs at least one point");
  if (target_.size() != n) throw InvalidInput("target weights differ in length from points");

  double sum = 0.0;
  for (double w : target_) {
    if (!(w >= 0.0)) throw InvalidInput("target weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kNormTolerance) throw InvalidInput("target weights must sum to one");

  target_mean_.assign(d, 0.0);
  for_each_point(points, [&](std::size_t i, std::span<const double> p) {
    const double norm2 = squared_norm(p);
    if (norm2 > (1.0 + kNormTolerance) * (1.0 + kNormTolerance))
      throw UnitBallViolation(i, std::sqrt(norm2));
    const double w = target_[i];
    if (w == 0.0) return;
    for (std::size_t j = 0; j < d; ++j) target_mean_[j] += w * p[j];
  });
}

std::size_t fw_iterations_for(double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  // The small slack keeps e.g. 8 / 0.05 from rounding up to 161.
  return static_cast<std::size_t>(std::ceil(8.0 / epsilon - 1e-9));
}

FwState fw_init(const FwProblem& problem) {
  const std::size_t n = problem.size();
  const std::size_t d = problem.dim();
  auto mu = problem.target_mean();

  // max f(e_i) = min |mu - p_i|^2.
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for_each_point(problem.points(), [&](std::size_t i, std::span<const double> p) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += (mu[j] - p[j]) * (mu[j] - p[j]);
    if (s < best_dist) {
      best_dist = s;
      best = i;
    }
  });

  FwState state;
  state.x.assign(n, 0.0);
  state.x[best] = 1.0;
  state.support = {best};
  state.residual.resize(d);
  std::vector<double> p(d);
  problem.points().row(best, p);
  for (std::size_t j = 0; j < d; ++j) state.residual[j] = mu[j] - p[j];
  return state;
}

std::vector<double> fw_gradient(const FwState& state, const FwProblem& problem) {
  std::vector<double> g(problem.size());
  for_each_point(problem.points(), [&](std::size_t i, std::span<const double> p) {
    g[i] = 2.0 * dot(p, state.residual);
  });
  return g;
}

namespace {

// h = A (e_vertex - x) = p_vertex - (mu_w - r).
std::vector<double> direction_image(const FwState& state, const FwProblem& problem,
                                    std::size_t vertex) {
  const std::size_t d = problem.dim();
  std::vector<double> h(d);
  problem.points().row(vertex, h);
  auto mu = problem.target_mean();
  for (std::size_t j = 0; j < d; ++j) h[j] -= mu[j] - state.residual[j];
  return h;
}

double step_length(std::span<const double> r, std::span<const double> h) {
  const double hh = squared_norm(h);
  if (hh <= kFwDirectionTolerance) return 0.0;
  return std::clamp(dot(r, h) / hh, 0.0, 1.0);
}

}  // namespace

double fw_line_search(const FwState& state, const FwProblem& problem, std::size_t vertex) {
  if (vertex >= problem.size()) throw InvalidInput("vertex index out of range");
  const auto h = direction_image(state, problem, vertex);
  return step_length(state.residual, h);
}

std::vector<double> fw_recompute_residual(const FwState& state, const FwProblem& problem) {
  const std::size_t d = problem.dim();
  auto mu = problem.target_mean();
  std::vector<double> r(mu.begin(), mu.end());
  std::vector<double> p(d);
  for (std::size_t i : state.support) {
    problem.points().row(i, p);
    for (std::size_t j = 0; j < d; ++j) r[j] -= state.x[i] * p[j];
  }
  return r;
}

double fw_step(FwState& state, const FwProblem& problem) {
  // argmax of the gradient 2 A^T r.
  const std::size_t vertex = argmax_inner(problem.points(), state.residual);
  const auto h = direction_image(state, problem, vertex);
  const double alpha = step_length(state.residual, h);
  ++state.iteration;
  if (alpha <= 0.0) return 0.0;

  if (alpha >= 1.0) {
    for (std::size_t i : state.support) state.x[i] = 0.0;
    state.support.clear();
  } else {
    for (std::size_t i : state.support) state.x[i] *= 1.0 - alpha;
  }
  auto pos = std::lower_bound(state.support.begin(), state.support.end(), vertex);
  if (pos == state.support.end() || *pos != vertex) state.support.insert(pos, vertex);
  state.x[vertex] += alpha;

  for (std::size_t j = 0; j < h.size(); ++j) state.residual[j] -= alpha * h[j];
  if (state.iteration % kResyncInterval == 0) state.residual = fw_recompute_residual(state, problem);
  return alpha;
}

FwResult fw_solve(const FwProblem& problem, const FwObserver& observer) {
  FwState state = fw_init(problem);
  if (observer) observer(state);
  while (state.iteration < problem.iterations() &&
         state.squared_residual() > problem.stop_residual) {
    const double alpha = fw_step(state, problem);
    if (observer) observer(state);
    if (alpha <= 0.0) break;
  }

  std::vector<SparseWeights::Entry> entries;
  entries.reserve(state.support.size());
  for (std::size_t i : state.support) entries.push_back({i, state.x[i]});
  FwResult result;
  result.weights = SparseWeights::from_entries(std::move(entries));
  result.squared_residual = state.squared_residual();
  result.iterations = state.iteration;
  return result;
}

}  // namespace avgcoreset
