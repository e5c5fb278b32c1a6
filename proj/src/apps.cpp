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

#include "avgcoreset/apps.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "avgcoreset/errors.hpp"
#include "avgcoreset/linalg.hpp"
#include "avgcoreset/point_source.hpp"

namespace avgcoreset {

SparseWeights one_mean_coreset(const WeightedSet& set, double epsilon, Mode mode) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
  const double inner = (epsilon / 4.0) * (epsilon / 4.0);
  return coreset(set, inner, mode);
}

double OneMeanCertificates::worst() const {
  return std::max({mean_norm, weight_gap, variance_gap});
}

OneMeanCertificates one_mean_certificates(const WeightedSet& set, const SparseWeights& u) {
  const auto [normalized, transform] = normalize(set);
  const std::size_t d = set.dim();
  std::vector<double> sum(d, 0.0);
  double mass = 0.0;
  double second = 0.0;
  for (const auto& e : u.entries()) {
    const double ut = e.weight / transform.total_weight;
    auto p = normalized.points.row(e.index);
    for (std::size_t j = 0; j < d; ++j) sum[j] += ut * p[j];
    mass += ut;
    second += ut * squared_norm(p);
  }
  return {std::sqrt(squared_norm(sum)), std::abs(1.0 - mass), std::abs(1.0 - second)};
}

double one_mean_cost(const WeightedSet& set, std::span<const double> x) {
  if (x.size() != set.dim()) throw InvalidInput("query dimension mismatch");
  double cost = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto q = set.point(i);
    double s = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) s += (q[j] - x[j]) * (q[j] - x[j]);
    cost += set.weights()[i] * s;
  }
  return cost;
}

double one_mean_cost(const WeightedSet& set, const SparseWeights& u, std::span<const double> x) {
  if (x.size() != set.dim()) throw InvalidInput("query dimension mismatch");
  double cost = 0.0;
  for (const auto& e : u.entries()) {
    auto q = set.point(e.index);
    double s = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) s += (q[j] - x[j]) * (q[j] - x[j]);
    cost += e.weight * s;
  }
  return cost;
}

void IdentityMap::apply(std::span<const double> x, std::span<double> out) const {
  std::copy(x.begin(), x.end(), out.begin());
}

RandomFourierMap::RandomFourierMap(std::size_t input_dim, std::size_t output_dim, double bandwidth,
                                   std::uint64_t seed) {
  if (output_dim == 0 || output_dim % 2 != 0) throw InvalidInput("RFF output_dim must be even");
  if (!(bandwidth > 0.0)) throw InvalidInput("RFF bandwidth must be positive");
  frequencies_ = DenseMatrix(output_dim / 2, input_dim);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0 / bandwidth);
  for (double& v : frequencies_.data()) v = gauss(rng);
}

void RandomFourierMap::apply(std::span<const double> x, std::span<double> out) const {
  const std::size_t half = frequencies_.rows();
  const double amp = 1.0 / std::sqrt(static_cast<double>(half));
  for (std::size_t j = 0; j < half; ++j) {
    const double phase = dot(frequencies_.row(j), x);
    out[2 * j] = amp * std::cos(phase);
    out[2 * j + 1] = amp * std::sin(phase);
  }
}

DenseMatrix map_points(const DenseMatrix& points, const FeatureMap& map) {
  if (points.cols() != map.input_dim()) throw InvalidInput("feature map input dimension mismatch");
  DenseMatrix out(points.rows(), map.output_dim());
  for (std::size_t i = 0; i < points.rows(); ++i) map.apply(points.row(i), out.row(i));
  return out;
}

SparseWeights kde_coreset(const DenseMatrix& points, const FeatureMap& map, double epsilon,
                          Mode mode) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
  return coreset(WeightedSet::uniform(map_points(points, map)), epsilon * epsilon, mode);
}

std::vector<double> mean_embedding(const DenseMatrix& mapped, const SparseWeights* u) {
  std::vector<double> mu(mapped.cols(), 0.0);
  auto add = [&](std::size_t i, double w) {
    auto r = mapped.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) mu[j] += w * r[j];
  };
  if (u == nullptr) {
    const double w = 1.0 / static_cast<double>(mapped.rows());
    for (std::size_t i = 0; i < mapped.rows(); ++i) add(i, w);
  } else {
    const double total = u->total();
    for (const auto& e : u->entries()) add(e.index, e.weight / total);
  }
  return mu;
}

double dim_coreset_size_bound(std::size_t k, double epsilon) {
  const double ratio = 5.0 * static_cast<double>(k) / epsilon;
  return std::ceil(128.0 * ratio * ratio);
}

DimCoresetResult dim_coreset(const DenseMatrix& a, std::size_t k, double epsilon, Mode mode,
                             std::size_t memory_budget) {
  const std::size_t n = a.rows();
  const std::size_t d = a.cols();
  if (d == 0 || n < d + 1) throw InvalidInput("dim coreset needs n >= d + 1 rows");
  if (k < 1 || k > d) throw InvalidInput("k must lie in [1, d]");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw InvalidInput("epsilon must lie in (0, 1/2)");

  DimCoresetResult result;
  result.inner_epsilon = std::pow(epsilon / (5.0 * static_cast<double>(k)), 2);

  auto exact = [&]() {
    result.weights.assign(n, 1.0);
    result.nnz = n;
    result.exact = true;
    return result;
  };

  // Rescale so the largest row has unit norm; the cost ratio is scale-free
  // and r stays representable for small eps.
  double max_row = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_row = std::max(max_row, std::sqrt(squared_norm(a.row(i))));
  if (max_row == 0.0) return exact();

  const double eps4 = epsilon * epsilon * epsilon * epsilon;
  result.r = 1.0 + 4.0 / eps4;
  DenseMatrix concat(n, d + 1);
  for (std::size_t i = 0; i < n; ++i) {
    auto src = a.row(i);
    auto dst = concat.row(i);
    for (std::size_t j = 0; j < d; ++j) dst[j] = src[j] / max_row;
    dst[d] = result.r;
  }
  const SvdFactors f = svd(concat);

  // Components 1..d of the (d+1)-column factorization.
  double tail = 0.0;
  for (std::size_t j = k; j < d; ++j) tail += f.S[j] * f.S[j];
  tail = std::sqrt(tail);
  if (k < d && tail <= kDegenerateRelative * f.S[0]) return exact();

  DenseMatrix v(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) v(i, j) = f.U(i, j);
    for (std::size_t j = k; j < d; ++j) v(i, j) = f.U(i, j) * f.S[j] / tail;
  }

  // Row i of the lifted problem is the row-stacked outer product v_i v_i^T.
  auto outer = [&v, d](std::size_t i, std::span<double> out) {
    auto vi = v.row(i);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) out[r * d + c] = vi[r] * vi[c];
  };
  GeneratedSource stacked(n, d * d, outer);
  DenseMatrix dense;
  MatrixSource dense_source(dense);
  const PointSource* source = &stacked;
  if (n * d * d * sizeof(double) <= memory_budget) {
    dense = materialize(stacked);
    dense_source = MatrixSource(dense);
    source = &dense_source;
  }

  const std::vector<double> ones(n, 1.0);
  const SparseWeights u =
      coreset_from_source(*source, ones, result.inner_epsilon / 16.0,
                          resolve_mode(mode, n, result.inner_epsilon), memory_budget);
  result.weights = u.to_dense(n);
  result.nnz = u.nnz();
  return result;
}

double subspace_cost(const DenseMatrix& a, std::span<const double> weights,
                     std::span<const double> offset, const DenseMatrix& x) {
  const std::size_t d = a.cols();
  if (offset.size() != d || x.rows() != d) throw InvalidInput("subspace cost dimension mismatch");
  if (!weights.empty() && weights.size() != a.rows()) throw InvalidInput("weights length mismatch");
  std::vector<double> centred(d);
  double cost = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    if (w == 0.0) continue;
    auto row = a.row(i);
    for (std::size_t j = 0; j < d; ++j) centred[j] = row[j] - offset[j];
    double s = 0.0;
    for (std::size_t c = 0; c < x.cols(); ++c) {
      double proj = 0.0;
      for (std::size_t j = 0; j < d; ++j) proj += centred[j] * x(j, c);
      s += proj * proj;
    }
    cost += w * s;
  }
  return cost;
}

}  // namespace avgcoreset
