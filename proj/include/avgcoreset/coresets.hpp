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
#include <cstdint>
#include <span>
#include <vector>

#include "avgcoreset/core.hpp"
#include "avgcoreset/point_source.hpp"

namespace avgcoreset {

enum class Mode {
  kSlow,  // one Frank-Wolfe run over all points
  kFast,  // recursive partition-and-merge booster
  kAuto   // kFast when n * eps > kAutoCrossover * log2(n)^2
};

inline constexpr double kAutoCrossover = 64.0;

/// Materialized point sets above this many bytes are generated on the fly.
inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{2} << 30;

struct CoresetParams {
  double epsilon = 0.1;
  Mode mode = Mode::kSlow;
  double delta = 0.1;       // probabilistic construction only
  std::uint64_t seed = 0;   // probabilistic construction only
};

/// Contiguous balanced split of [0, n) into k ranges: part i is
/// [boundaries[i], boundaries[i + 1]).
struct PartitionPlan {
  std::size_t k = 0;
  std::vector<std::size_t> boundaries;

  std::size_t part_size(std::size_t i) const { return boundaries[i + 1] - boundaries[i]; }
};

/// k is clamped to [1, n]. Sizes differ by at most one, larger parts first.
PartitionPlan partition(std::size_t n, std::size_t k);

Mode resolve_mode(Mode mode, std::size_t n, double epsilon);

/// Vector-summarization eps-coreset of (Q, m): at most 128 / eps nonzeros and
/// summarization_error <= eps (2 eps in fast mode). A set with zero spread
/// gets the single point closest to the mean carrying the total weight.
SparseWeights coreset(const WeightedSet& set, double epsilon, Mode mode = Mode::kSlow);

/// Same pipeline run so that the unit-ball solver stops at `size` points
/// (size - 1 Frank-Wolfe iterations, or the fast booster's base case).
SparseWeights coreset_of_size(const WeightedSet& set, std::size_t size, Mode mode = Mode::kSlow);

/// Generic form over a point source with explicit weights. lifted_epsilon is
/// the error handed to the unit-ball solver after normalization and lifting
/// (coreset() passes eps / 16). Sources whose lifted copy would exceed
/// memory_budget bytes are lifted lazily.
SparseWeights coreset_from_source(const PointSource& points, std::span<const double> weights,
                                  double lifted_epsilon, Mode mode,
                                  std::size_t memory_budget = kDefaultMemoryBudget);

struct FastCoresetResult {
  SparseWeights weights;        // the subset C with weights u, sum(u) = 1
  std::size_t levels = 0;       // partition-and-merge rounds before the base case
  bool fell_back = false;       // a round failed to halve and the base case ran early
};

/// Fast booster for unit-ball points with distribution weights w. Output has
/// at most ceil(8 / eps) points and squared error at most 2 eps.
FastCoresetResult fast_coreset(const PointSource& points, std::span<const double> weights,
                               double epsilon);

/// Number of groups floor(3.5 ln(1/delta)) + 1 of the median-of-means sampler.
std::size_t prob_coreset_groups(double delta);

/// ceil(4 / eps), the size of every group.
std::size_t prob_coreset_group_size(double epsilon);

struct ProbCoresetResult {
  std::vector<std::size_t> indices;  // with multiplicity, |indices| = ceil(4 / eps)
  std::size_t groups = 0;
  std::size_t selected_group = 0;
  bool exact = false;                // sample would exceed 10 n: all indices returned
};

/// Median-of-means sampler on an unweighted point set.
ProbCoresetResult prob_coreset(const DenseMatrix& points, double epsilon, double delta,
                               std::uint64_t seed);

/// Uniform weights total_weight / |S| per pick, duplicates summed.
SparseWeights prob_coreset_weights(const ProbCoresetResult& sample, double total_weight);

}  // namespace avgcoreset
