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

#include "avgcoreset/coresets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "avgcoreset/errors.hpp"
#include "avgcoreset/frank_wolfe.hpp"

namespace avgcoreset {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
}

// ceil(8 / eps) - 1 iterations keep the support at ceil(8 / eps) points. On
// the lifted sphere (diameter 1) the residual after k steps is at most
// 4 / (k + 3), so the squared error still ends below eps / 2.
std::size_t solver_iterations(double epsilon) {
  return std::max<std::size_t>(fw_iterations_for(epsilon), 1) - 1;
}

// Without early_stop the solver runs its full iteration count unless the line
// search reaches the optimum.
SparseWeights solve_unit_ball(const PointSource& points, std::vector<double> weights,
                              double epsilon, bool early_stop = true) {
  FwProblem problem(points, std::move(weights), solver_iterations(epsilon));
  if (early_stop) problem.stop_residual = 0.01 * epsilon;
  return fw_solve(problem).weights;
}

std::vector<double> normalized_copy(std::span<const double> w) {
  double s = 0.0;
  for (double v : w) s += v;
  std::vector<double> out(w.begin(), w.end());
  for (double& v : out) v /= s;
  return out;
}

FastCoresetResult fast_coreset_impl(const PointSource& points, std::span<const double> weights,
                                    double epsilon, bool early_stop = true) {
  const std::size_t n0 = points.size();
  const std::size_t d = points.dim();
  const double levels_budget = std::max(1.0, std::log2(static_cast<double>(n0)));
  const auto k = static_cast<std::size_t>(std::ceil(2.0 * levels_budget / epsilon - 1e-9));
  const double level_epsilon = epsilon / levels_budget;

  FastCoresetResult result;
  std::vector<std::size_t> index(n0);
  std::iota(index.begin(), index.end(), std::size_t{0});
  std::vector<double> w = normalized_copy(weights);

  DenseMatrix subset;  // points of the current round after the first
  const PointSource* current = &points;
  MatrixSource subset_source(subset);

  while (index.size() > k) {
    const std::size_t m = index.size();
    const PartitionPlan plan = partition(m, k);

    DenseMatrix means(plan.k, d);
    std::vector<double> part_weight(plan.k, 0.0);
    for (std::size_t part = 0; part < plan.k; ++part) {
      for (std::size_t i = plan.boundaries[part]; i < plan.boundaries[part + 1]; ++i)
        part_weight[part] += w[i];
    }
    std::size_t part = 0;
    for_each_point(*current, [&](std::size_t i, std::span<const double> p) {
      while (i >= plan.boundaries[part + 1]) ++part;
      auto mu = means.row(part);
      const double share = w[i] / part_weight[part];
      for (std::size_t j = 0; j < d; ++j) mu[j] += share * p[j];
    });

    MatrixSource mean_source(means);
    const SparseWeights chosen =
        solve_unit_ball(mean_source, normalized_copy(part_weight), level_epsilon);

    std::size_t chosen_points = 0;
    for (const auto& e : chosen.entries()) chosen_points += plan.part_size(e.index);
    if (chosen_points > (m + 1) / 2) {
      result.fell_back = true;
      break;
    }

    std::vector<std::size_t> next_index;
    std::vector<double> next_w;
    DenseMatrix next_subset(chosen_points, d);
    next_index.reserve(chosen_points);
    next_w.reserve(chosen_points);
    for (const auto& e : chosen.entries()) {
      for (std::size_t i = plan.boundaries[e.index]; i < plan.boundaries[e.index + 1]; ++i) {
        current->row(i, next_subset.row(next_index.size()));
        next_index.push_back(index[i]);
        next_w.push_back(e.weight * w[i] / part_weight[e.index]);
      }
    }
    index = std::move(next_index);
    w = normalized_copy(next_w);
    subset = std::move(next_subset);
    subset_source = MatrixSource(subset);
    current = &subset_source;
    ++result.levels;
  }

  const SparseWeights base = solve_unit_ball(*current, std::move(w), epsilon, early_stop);
  std::vector<SparseWeights::Entry> entries;
  entries.reserve(base.nnz());
  for (const auto& e : base.entries()) entries.push_back({index[e.index], e.weight});
  result.weights = SparseWeights::from_entries(std::move(entries));
  return result;
}

}  // namespace

PartitionPlan partition(std::size_t n, std::size_t k) {
  if (n == 0) throw InvalidInput("cannot partition an empty set");
  k = std::clamp<std::size_t>(k, 1, n);
  PartitionPlan plan;
  plan.k = k;
  plan.boundaries.resize(k + 1);
  const std::size_t base = n / k;
  const std::size_t extra = n % k;
  plan.boundaries[0] = 0;
  for (std::size_t i = 0; i < k; ++i)
    plan.boundaries[i + 1] = plan.boundaries[i] + base + (i < extra ? 1 : 0);
  return plan;
}

Mode resolve_mode(Mode mode, std::size_t n, double epsilon) {
  if (mode != Mode::kAuto) return mode;
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  return static_cast<double>(n) * epsilon > kAutoCrossover * lg * lg ? Mode::kFast : Mode::kSlow;
}

namespace {

SparseWeights coreset_pipeline(const PointSource& points, std::span<const double> weights,
                               double lifted_epsilon, Mode mode, std::size_t memory_budget,
                               bool early_stop) {
  const std::size_t n = points.size();
  const std::size_t d = points.dim();
  if (n == 0 || d == 0) throw InvalidInput("coreset input is empty");
  if (weights.size() != n) throw InvalidInput("points and weights differ in length");
  if (!(lifted_epsilon > 0.0)) throw InvalidInput("epsilon must be positive");

  double total = 0.0;
  for (double m : weights) {
    if (!(m > 0.0) || !std::isfinite(m)) throw InvalidInput("weights must be positive");
    total += m;
  }

  std::vector<double> mu(d, 0.0);
  double max_abs = 0.0;
  for_each_point(points, [&](std::size_t i, std::span<const double> q) {
    const double w = weights[i] / total;
    for (std::size_t j = 0; j < d; ++j) {
      mu[j] += w * q[j];
      max_abs = std::max(max_abs, std::abs(q[j]));
    }
  });
  double var = 0.0;
  std::size_t closest = 0;
  double closest_dist = std::numeric_limits<double>::infinity();
  for_each_point(points, [&](std::size_t i, std::span<const double> q) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += (q[j] - mu[j]) * (q[j] - mu[j]);
    var += weights[i] / total * s;
    if (s < closest_dist) {
      closest_dist = s;
      closest = i;
    }
  });

  if (n < 2 || std::sqrt(var) <= kDegenerateRelative * max_abs)
    return SparseWeights::from_entries({{closest, total}});

  const double sigma = std::sqrt(var);
  std::vector<double> scale(n);   // |p_i|^2 + 1
  std::vector<double> lifted_w(n);
  for_each_point(points, [&](std::size_t i, std::span<const double> q) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double p = (q[j] - mu[j]) / sigma;
      s += p * p;
    }
    scale[i] = s + 1.0;
    lifted_w[i] = weights[i] / total * scale[i] / 2.0;
  });

  auto lift_row = [&points, &mu, &scale, sigma, d](std::size_t i, std::span<double> out) {
    points.row(i, out.first(d));
    for (std::size_t j = 0; j < d; ++j) out[j] = (out[j] - mu[j]) / sigma / scale[i];
    out[d] = 1.0 / scale[i];
  };
  GeneratedSource lazy(n, d + 1, lift_row);
  DenseMatrix lifted;
  MatrixSource dense(lifted);
  const PointSource* lifted_source = &lazy;
  if (n * (d + 1) * sizeof(double) <= memory_budget) {
    lifted = materialize(lazy);
    dense = MatrixSource(lifted);
    lifted_source = &dense;
  }

  SparseWeights lifted_u;
  if (resolve_mode(mode, n, 16.0 * lifted_epsilon) == Mode::kFast)
    lifted_u = fast_coreset_impl(*lifted_source, lifted_w, lifted_epsilon, early_stop).weights;
  else
    lifted_u = solve_unit_ball(*lifted_source, std::move(lifted_w), lifted_epsilon, early_stop);

  std::vector<SparseWeights::Entry> out;
  out.reserve(lifted_u.nnz());
  for (const auto& e : lifted_u.entries())
    out.push_back({e.index, total * 2.0 * e.weight / scale[e.index]});
  return SparseWeights::from_entries(std::move(out));
}

}  // namespace

SparseWeights coreset_from_source(const PointSource& points, std::span<const double> weights,
                                  double lifted_epsilon, Mode mode, std::size_t memory_budget) {
  return coreset_pipeline(points, weights, lifted_epsilon, mode, memory_budget, true);
}

SparseWeights coreset(const WeightedSet& set, double epsilon, Mode mode) {
  check_epsilon(epsilon);
  MatrixSource src(set.points());
  return coreset_from_source(src, set.weights(), epsilon / 16.0, resolve_mode(mode, set.size(), epsilon));
}

SparseWeights coreset_of_size(const WeightedSet& set, std::size_t size, Mode mode) {
  if (size == 0) throw InvalidInput("coreset size must be positive");
  MatrixSource src(set.points());
  const double lifted_epsilon = 8.0 / static_cast<double>(size);
  return coreset_pipeline(src, set.weights(), lifted_epsilon,
                          resolve_mode(mode, set.size(), 16.0 * lifted_epsilon),
                          kDefaultMemoryBudget, false);
}

FastCoresetResult fast_coreset(const PointSource& points, std::span<const double> weights,
                               double epsilon) {
  check_epsilon(epsilon);
  if (points.size() == 0) throw InvalidInput("fast coreset input is empty");
  if (weights.size() != points.size()) throw InvalidInput("points and weights differ in length");
  double s = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw InvalidInput("weights must be positive");
    s += w;
  }
  if (std::abs(s - 1.0) > kNormTolerance) throw InvalidInput("weights must sum to one");
  return fast_coreset_impl(points, weights, epsilon);
}

std::size_t prob_coreset_groups(double delta) {
  if (!(delta > 0.0 && delta <= 0.9)) throw InvalidInput("delta must lie in (0, 0.9]");
  return static_cast<std::size_t>(std::floor(3.5 * std::log(1.0 / delta))) + 1;
}

std::size_t prob_coreset_group_size(double epsilon) {
  check_epsilon(epsilon);
  return static_cast<std::size_t>(std::ceil(4.0 / epsilon - 1e-9));
}

ProbCoresetResult prob_coreset(const DenseMatrix& points, double epsilon, double delta,
                               std::uint64_t seed) {
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  if (n == 0 || d == 0) throw InvalidInput("prob coreset input is empty");
  const std::size_t k = prob_coreset_groups(delta);
  const std::size_t group = prob_coreset_group_size(epsilon);

  ProbCoresetResult result;
  result.groups = k;
  if (k * group > 10 * n) {
    result.exact = true;
    result.indices.resize(n);
    std::iota(result.indices.begin(), result.indices.end(), std::size_t{0});
    return result;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> sample(k * group);
  for (auto& s : sample) s = pick(rng);

  DenseMatrix means(k, d);
  for (std::size_t g = 0; g < k; ++g) {
    auto mu = means.row(g);
    for (std::size_t t = 0; t < group; ++t) {
      auto q = points.row(sample[g * group + t]);
      for (std::size_t j = 0; j < d; ++j) mu[j] += q[j];
    }
    for (double& v : mu) v /= static_cast<double>(group);
  }

  std::size_t best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < k; ++j) {
    double cost = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double diff = means(i, c) - means(j, c);
        s += diff * diff;
      }
      cost += std::sqrt(s);
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = j;
    }
  }

  result.selected_group = best;
  result.indices.assign(sample.begin() + static_cast<std::ptrdiff_t>(best * group),
                        sample.begin() + static_cast<std::ptrdiff_t>((best + 1) * group));
  return result;
}

SparseWeights prob_coreset_weights(const ProbCoresetResult& sample, double total_weight) {
  std::vector<SparseWeights::Entry> entries;
  entries.reserve(sample.indices.size());
  const double each = total_weight / static_cast<double>(sample.indices.size());
  for (std::size_t i : sample.indices) entries.push_back({i, each});
  return SparseWeights::accumulate(std::move(entries));
}

}  // namespace avgcoreset
