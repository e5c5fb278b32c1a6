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

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "avgcoreset/core.hpp"
#include "avgcoreset/point_source.hpp"

namespace avgcoreset {

/// Directions with squared norm below this are treated as zero in the line search.
inline constexpr double kFwDirectionTolerance = 1e-14;

/// Maximize f(x) = -|sum_i (w_i - x_i) p_i|^2 over the probability simplex,
/// where every p_i lies in the unit ball. The maximum is 0, attained at x = w.
class FwProblem {
 public:
  /// Validates the unit-ball precondition (UnitBallViolation) and that w is a
  /// distribution, and caches the target mean A w. The source must outlive
  /// the problem.
  FwProblem(const PointSource& points, std::vector<double> target_weights, std::size_t iterations);

  const PointSource& points() const { return *points_; }
  std::span<const double> target_weights() const { return target_; }
  std::span<const double> target_mean() const { return target_mean_; }
  std::size_t iterations() const { return iterations_; }
  std::size_t size() const { return points_->size(); }
  std::size_t dim() const { return points_->dim(); }

  /// Stop as soon as the squared residual falls to this value (0 disables).
  double stop_residual = 0.0;

 private:
  const PointSource* points_;
  std::vector<double> target_;
  std::vector<double> target_mean_;
  std::size_t iterations_;
};

/// Iterate x on the simplex plus the residual r = sum_i (w_i - x_i) p_i.
struct FwState {
  std::vector<double> x;              // dense, length n
  std::vector<std::size_t> support;   // indices with x_i > 0, ascending
  std::vector<double> residual;       // length d
  std::size_t iteration = 0;

  double objective() const { return -squared_norm(residual); }
  double squared_residual() const { return squared_norm(residual); }
};

struct FwResult {
  SparseWeights weights;  // a distribution over the problem's points
  double squared_residual = 0.0;
  std::size_t iterations = 0;
};

/// ceil(8 / eps): the iteration count for which the squared residual is at
/// most eps on unit-ball inputs.
std::size_t fw_iterations_for(double epsilon);

/// Starts at the vertex e_i with largest f(e_i), smallest index on ties.
FwState fw_init(const FwProblem& problem);

/// Gradient 2 A^T r of f at the current iterate.
std::vector<double> fw_gradient(const FwState& state, const FwProblem& problem);

/// Exact maximizer of f along x + a (e_vertex - x), clamped to [0, 1].
double fw_line_search(const FwState& state, const FwProblem& problem, std::size_t vertex);

/// One Frank-Wolfe iteration. Returns the step size taken.
double fw_step(FwState& state, const FwProblem& problem);

/// Recomputes the residual from scratch out of x.
std::vector<double> fw_recompute_residual(const FwState& state, const FwProblem& problem);

using FwObserver = std::function<void(const FwState&)>;

/// Runs problem.iterations() iterations (fewer if the residual reaches
/// problem.stop_residual or a step makes no progress). The observer, if any,
/// sees the initial state and the state after every iteration.
FwResult fw_solve(const FwProblem& problem, const FwObserver& observer = {});

}  // namespace avgcoreset
