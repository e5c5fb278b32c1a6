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

#include "avgcoreset/coresets.hpp"
#include "avgcoreset/core.hpp"
#include "avgcoreset/matrix.hpp"

namespace avgcoreset {

// ---------------------------------------------------------------------------
// 1-mean

/// Weights u with |sum_i (m_i - u_i) |q_i - x|^2| <= eps * sum_i m_i |q_i - x|^2
/// for every centre x. Built as coreset(set, (eps / 4)^2).
SparseWeights one_mean_coreset(const WeightedSet& set, double epsilon, Mode mode = Mode::kSlow);

/// The three normalized-coordinate quantities that together bound the 1-mean
/// error, with u~ = u / |m|_1 and p_i the normalized points:
/// |sum u~_i p_i|, |1 - sum u~_i| and |1 - sum u~_i |p_i|^2|.
struct OneMeanCertificates {
  double mean_norm = 0.0;
  double weight_gap = 0.0;
  double variance_gap = 0.0;

  double worst() const;
};

OneMeanCertificates one_mean_certificates(const WeightedSet& set, const SparseWeights& u);

/// sum_i m_i |q_i - x|^2 with the set's own weights.
double one_mean_cost(const WeightedSet& set, std::span<const double> x);

/// sum_i u_i |q_i - x|^2.
double one_mean_cost(const WeightedSet& set, const SparseWeights& u, std::span<const double> x);

// ---------------------------------------------------------------------------
// Kernel density estimates

class FeatureMap {
 public:
  virtual ~FeatureMap() = default;
  virtual std::size_t input_dim() const = 0;
  virtual std::size_t output_dim() const = 0;
  virtual void apply(std::span<const double> x, std::span<double> out) const = 0;
};

class IdentityMap final : public FeatureMap {
 public:
  explicit IdentityMap(std::size_t dim) : dim_(dim) {}
  std::size_t input_dim() const override { return dim_; }
  std::size_t output_dim() const override { return dim_; }
  void apply(std::span<const double> x, std::span<double> out) const override;

 private:
  std::size_t dim_;
};

/// Random Fourier features for exp(-|x - y|^2 / (2 bandwidth^2)) using paired
/// cos/sin components, so |phi(x)| = 1 for every x. output_dim must be even.
class RandomFourierMap final : public FeatureMap {
 public:
  RandomFourierMap(std::size_t input_dim, std::size_t output_dim, double bandwidth,
                   std::uint64_t seed);
  std::size_t input_dim() const override { return frequencies_.cols(); }
  std::size_t output_dim() const override { return 2 * frequencies_.rows(); }
  void apply(std::span<const double> x, std::span<double> out) const override;

 private:
  DenseMatrix frequencies_;  // (output_dim / 2) x input_dim
};

DenseMatrix map_points(const DenseMatrix& points, const FeatureMap& map);

/// Vector-summarization eps^2-coreset of the mapped points (unit weights);
/// indices refer to the original rows.
SparseWeights kde_coreset(const DenseMatrix& points, const FeatureMap& map, double epsilon,
                          Mode mode = Mode::kSlow);

/// Mean of the mapped rows under weights u / |u|_1 (all rows equally when u is null).
std::vector<double> mean_embedding(const DenseMatrix& mapped, const SparseWeights* u = nullptr);

// ---------------------------------------------------------------------------
// Dimensionality reduction (k-SVD / k-PCA / LMS)

struct DimCoresetResult {
  std::vector<double> weights;  // u_i; the diagonal scaling is W_ii = sqrt(u_i)
  std::size_t nnz = 0;
  double r = 0.0;               // column appended to the (rescaled) input
  double inner_epsilon = 0.0;   // (eps / 5k)^2 handed to the summarization coreset
  bool exact = false;           // trailing singular block vanished; all weights 1
};

/// Row weights W with |1 - |W(A - l)X|_F^2 / |(A - l)X|_F^2| <= c eps for every
/// offset l and orthonormal d x (d - k) matrix X. Requires n >= d + 1,
/// 1 <= k <= d and eps in (0, 1/2).
DimCoresetResult dim_coreset(const DenseMatrix& a, std::size_t k, double epsilon,
                             Mode mode = Mode::kSlow,
                             std::size_t memory_budget = kDefaultMemoryBudget);

/// ceil(128 (5k / eps)^2).
double dim_coreset_size_bound(std::size_t k, double epsilon);

/// sum_i w_i |(a_i - l)^T X|^2; empty weights mean all ones.
double subspace_cost(const DenseMatrix& a, std::span<const double> weights,
                     std::span<const double> offset, const DenseMatrix& x);

}  // namespace avgcoreset
