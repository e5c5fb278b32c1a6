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

#include "avgcoreset/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "avgcoreset/errors.hpp"
#include "avgcoreset/point_source.hpp"

namespace avgcoreset {

void MatrixSource::row(std::size_t i, std::span<double> out) const {
  auto r = m_->row(i);
  std::copy(r.begin(), r.end(), out.begin());
}

DenseMatrix materialize(const PointSource& src) {
  DenseMatrix m(src.size(), src.dim());
  for (std::size_t i = 0; i < src.size(); ++i) src.row(i, m.row(i));
  return m;
}

WeightedSet::WeightedSet(DenseMatrix points, std::vector<double> weights, WeightPolicy policy) {
  if (points.rows() == 0 || points.cols() == 0) throw InvalidInput("weighted set needs n >= 1 and d >= 1");
  if (weights.size() != points.rows()) throw InvalidInput("points and weights differ in length");
  for (double v : points.data())
    if (!std::isfinite(v)) throw InvalidInput("non-finite coordinate");

  bool any_nonpositive = false;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i])) throw InvalidInput("non-finite weight");
    if (weights[i] <= 0.0) {
      if (policy == WeightPolicy::kReject)
        throw InvalidInput("weight " + std::to_string(i) + " is not positive");
      any_nonpositive = true;
    }
  }

  if (any_nonpositive) {
    std::vector<double> kept_data;
    std::vector<double> kept_weights;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      auto r = points.row(i);
      kept_data.insert(kept_data.end(), r.begin(), r.end());
      kept_weights.push_back(weights[i]);
      source_.push_back(i);
    }
    if (kept_weights.empty()) throw InvalidInput("no point has positive weight");
    points = DenseMatrix(kept_weights.size(), points.cols(), std::move(kept_data));
    weights = std::move(kept_weights);
  }

  points_ = std::move(points);
  weights_ = std::move(weights);
  for (double w : weights_) total_weight_ += w;
}

WeightedSet WeightedSet::uniform(DenseMatrix points) {
  std::vector<double> w(points.rows(), 1.0);
  return WeightedSet(std::move(points), std::move(w));
}

SparseWeights SparseWeights::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  SparseWeights out;
  out.entries_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0 && entries[i].index == entries[i - 1].index)
      throw InvalidInput("duplicate index in sparse weights");
    if (!(entries[i].weight >= 0.0)) throw InvalidInput("negative sparse weight");
    if (entries[i].weight > 0.0) out.entries_.push_back(entries[i]);
  }
  return out;
}

SparseWeights SparseWeights::accumulate(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  std::vector<Entry> merged;
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().index == e.index)
      merged.back().weight += e.weight;
    else
      merged.push_back(e);
  }
  return from_entries(std::move(merged));
}

SparseWeights SparseWeights::from_dense(std::span<const double> dense) {
  std::vector<Entry> e;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0.0) e.push_back({i, dense[i]});
  return from_entries(std::move(e));
}

double SparseWeights::total() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.weight;
  return s;
}

double SparseWeights::weight_of(std::size_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.index < i; });
  return (it != entries_.end() && it->index == index) ? it->weight : 0.0;
}

std::vector<double> SparseWeights::to_dense(std::size_t n) const {
  std::vector<double> out(n, 0.0);
  for (const auto& e : entries_) {
    if (e.index >= n) throw InvalidInput("sparse index out of range");
    out[e.index] = e.weight;
  }
  return out;
}

std::vector<double> weighted_mean(const WeightedSet& set) {
  const std::size_t d = set.dim();
  std::vector<double> mu(d, 0.0);
  const double total = set.total_weight();
  for (std::size_t i = 0; i < set.size(); ++i) {
    const double w = set.weights()[i] / total;
    auto q = set.point(i);
    for (std::size_t j = 0; j < d; ++j) mu[j] += w * q[j];
  }
  return mu;
}

namespace {

double variance_about(const WeightedSet& set, std::span<const double> mu) {
  const double total = set.total_weight();
  double var = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto q = set.point(i);
    double s = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      const double diff = q[j] - mu[j];
      s += diff * diff;
    }
    var += set.weights()[i] / total * s;
  }
  return var;
}

}  // namespace

double weighted_variance(const WeightedSet& set) {
  const auto mu = weighted_mean(set);
  return variance_about(set, mu);
}

double max_abs_coordinate(const DenseMatrix& points) {
  double m = 0.0;
  for (double v : points.data()) m = std::max(m, std::abs(v));
  return m;
}

bool is_degenerate(const WeightedSet& set, double variance) {
  const double scale = kDegenerateRelative * max_abs_coordinate(set.points());
  return std::sqrt(std::max(variance, 0.0)) <= scale;
}

std::size_t closest_to_mean(const WeightedSet& set) {
  const auto mu = weighted_mean(set);
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto q = set.point(i);
    double s = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) s += (q[j] - mu[j]) * (q[j] - mu[j]);
    if (s < best_dist) {
      best_dist = s;
      best = i;
    }
  }
  return best;
}

std::pair<NormalizedWeightedSet, NormalizationTransform> normalize(const WeightedSet& set) {
  NormalizationTransform t;
  t.mu = weighted_mean(set);
  const double var = variance_about(set, t.mu);
  if (set.size() < 2 || is_degenerate(set, var)) throw DegenerateVariance();
  t.sigma = std::sqrt(var);
  t.total_weight = set.total_weight();

  NormalizedWeightedSet out;
  out.points = DenseMatrix(set.size(), set.dim());
  out.weights.resize(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto q = set.point(i);
    auto p = out.points.row(i);
    for (std::size_t j = 0; j < q.size(); ++j) p[j] = (q[j] - t.mu[j]) / t.sigma;
    out.weights[i] = set.weights()[i] / t.total_weight;
  }
  return {std::move(out), std::move(t)};
}

LiftedSet lift(const NormalizedWeightedSet& normalized) {
  const std::size_t n = normalized.points.rows();
  const std::size_t d = normalized.points.cols();
  LiftedSet out{DenseMatrix(n, d + 1), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    auto p = normalized.points.row(i);
    const double scale = squared_norm(p) + 1.0;
    auto lifted = out.points.row(i);
    for (std::size_t j = 0; j < d; ++j) lifted[j] = p[j] / scale;
    lifted[d] = 1.0 / scale;
    out.weights[i] = normalized.weights[i] * scale / 2.0;
  }
  return out;
}

SparseWeights unlift_weights(const SparseWeights& lifted, const NormalizedWeightedSet& normalized,
                             double total_weight) {
  std::vector<SparseWeights::Entry> out;
  out.reserve(lifted.nnz());
  for (const auto& e : lifted.entries()) {
    if (e.index >= normalized.points.rows()) throw InvalidInput("lifted index out of range");
    const double scale = squared_norm(normalized.points.row(e.index)) + 1.0;
    out.push_back({e.index, total_weight * 2.0 * e.weight / scale});
  }
  return SparseWeights::from_entries(std::move(out));
}

double summarization_error(const WeightedSet& set, const SparseWeights& u) {
  const double u_total = u.total();
  if (!(u_total > 0.0)) throw InvalidInput("coreset weights sum to zero");
  const auto mu = weighted_mean(set);
  const double var = variance_about(set, mu);

  std::vector<double> approx(set.dim(), 0.0);
  for (const auto& e : u.entries()) {
    if (e.index >= set.size()) throw InvalidInput("coreset index out of range");
    auto q = set.point(e.index);
    for (std::size_t j = 0; j < q.size(); ++j) approx[j] += e.weight / u_total * q[j];
  }
  double num = 0.0;
  for (std::size_t j = 0; j < mu.size(); ++j) num += (approx[j] - mu[j]) * (approx[j] - mu[j]);

  if (is_degenerate(set, var)) {
    // Rounding noise of a coincident set lives at the same scale as var.
    const double noise = kDegenerateRelative * max_abs_coordinate(set.points());
    if (std::sqrt(num) <= noise) return 0.0;
    throw DegenerateVariance();
  }
  return num / var;
}

}  // namespace avgcoreset
