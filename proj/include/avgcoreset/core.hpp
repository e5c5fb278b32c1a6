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
#include <span>
#include <utility>
#include <vector>

#include "avgcoreset/matrix.hpp"

namespace avgcoreset {

/// Relative tolerance for the normalization identities (sum of weights, zero
/// mean, unit variance).
inline constexpr double kNormTolerance = 1e-9;

/// A weighted variance with sqrt(var) <= kDegenerateRelative * max|coordinate|
/// is treated as zero.
inline constexpr double kDegenerateRelative = 1e-12;

enum class WeightPolicy {
  kReject,          // nonpositive weight -> InvalidInput
  kDropNonpositive  // silently remove those points; source_index() maps back
};

/// n points in d dimensions with strictly positive weights.
class WeightedSet {
 public:
  WeightedSet(DenseMatrix points, std::vector<double> weights,
              WeightPolicy policy = WeightPolicy::kReject);

  /// Every point with weight one.
  static WeightedSet uniform(DenseMatrix points);

  std::size_t size() const { return points_.rows(); }
  std::size_t dim() const { return points_.cols(); }
  const DenseMatrix& points() const { return points_; }
  std::span<const double> point(std::size_t i) const { return points_.row(i); }
  std::span<const double> weights() const { return weights_; }
  double total_weight() const { return total_weight_; }

  /// Row of the caller's original matrix; differs from i only after dropping.
  std::size_t source_index(std::size_t i) const {
    return source_.empty() ? i : source_[i];
  }

 private:
  DenseMatrix points_;
  std::vector<double> weights_;
  std::vector<std::size_t> source_;
  double total_weight_ = 0.0;
};

/// Weight assignment over the indices of some point set; only nonzeros are
/// stored, sorted by index.
class SparseWeights {
 public:
  struct Entry {
    std::size_t index;
    double weight;
    bool operator==(const Entry&) const = default;
  };

  SparseWeights() = default;

  /// Sorts by index and drops zero weights. Duplicate indices or negative
  /// weights are rejected.
  static SparseWeights from_entries(std::vector<Entry> entries);

  /// Like from_entries but sums the weights of duplicate indices.
  static SparseWeights accumulate(std::vector<Entry> entries);

  static SparseWeights from_dense(std::span<const double> dense);

  std::span<const Entry> entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double total() const;
  double weight_of(std::size_t index) const;
  std::vector<double> to_dense(std::size_t n) const;

  bool operator==(const SparseWeights&) const = default;

 private:
  std::vector<Entry> entries_;
};

struct NormalizedWeightedSet {
  DenseMatrix points;
  std::vector<double> weights;
};

/// Affine map q -> (q - mu) / sigma together with the total input weight.
struct NormalizationTransform {
  std::vector<double> mu;
  double sigma = 0.0;
  double total_weight = 0.0;
};

/// Normalized points after the map p -> (p | 1) / (|p|^2 + 1). Every lifted
/// point lies on the sphere of radius 1/2 centred at (0, ..., 0, 1/2).
struct LiftedSet {
  DenseMatrix points;
  std::vector<double> weights;
};

std::vector<double> weighted_mean(const WeightedSet& set);
double weighted_variance(const WeightedSet& set);

/// Throws DegenerateVariance when the set has (numerically) zero spread.
std::pair<NormalizedWeightedSet, NormalizationTransform> normalize(const WeightedSet& set);

LiftedSet lift(const NormalizedWeightedSet& normalized);

/// Maps weights computed on the lifted set back to weights on the input set.
SparseWeights unlift_weights(const SparseWeights& lifted, const NormalizedWeightedSet& normalized,
                             double total_weight);

/// |mu_u - mu_m|^2 / sigma^2 where mu_u uses u / |u|_1. A value <= eps
/// certifies a vector-summarization eps-coreset.
double summarization_error(const WeightedSet& set, const SparseWeights& u);

/// True when sqrt(variance) is below the degeneracy threshold for this set.
bool is_degenerate(const WeightedSet& set, double variance);

/// Index of the point closest to the weighted mean (smallest index on ties).
std::size_t closest_to_mean(const WeightedSet& set);

double max_abs_coordinate(const DenseMatrix& points);

}  // namespace avgcoreset
