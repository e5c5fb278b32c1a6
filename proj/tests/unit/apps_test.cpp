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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "avgcoreset/apps.hpp"
#include "avgcoreset/errors.hpp"
#include "avgcoreset/linalg.hpp"
#include "random_data.hpp"

namespace ac = avgcoreset;
using ac::testing::gaussian_matrix;

TEST(OneMean, CostPreservedOnRandomQueries) {
  const auto set = ac::testing::random_weighted_set(300, 5, 1);
  const double eps = 0.2;
  const auto u = ac::one_mean_coreset(set, eps);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 3.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> x(5);
    for (double& v : x) v = g(rng);
    const double full = ac::one_mean_cost(set, x);
    EXPECT_LE(std::abs(full - ac::one_mean_cost(set, u, x)), eps * full);
  }
}

TEST(OneMean, CostMatchesDirectSum) {
  const ac::WeightedSet set(ac::DenseMatrix{{0.0, 0.0}, {2.0, 0.0}}, {1.0, 3.0});
  const std::vector<double> x{1.0, 1.0};
  EXPECT_DOUBLE_EQ(ac::one_mean_cost(set, x), 1.0 * 2.0 + 3.0 * 2.0);
  EXPECT_DOUBLE_EQ(ac::one_mean_cost(set, ac::SparseWeights::from_entries({{1, 4.0}}), x), 8.0);
  EXPECT_THROW(ac::one_mean_cost(set, std::vector<double>{1.0}), ac::InvalidInput);
}

TEST(OneMean, CertificatesVanishForOriginalWeights) {
  const auto set = ac::testing::random_weighted_set(100, 3, 2);
  const auto c = ac::one_mean_certificates(set, ac::SparseWeights::from_dense(set.weights()));
  EXPECT_LE(c.worst(), 1e-12);
}

TEST(OneMean, CertificatesBoundedForCoreset) {
  const auto set = ac::testing::random_weighted_set(300, 5, 3);
  const double eps = 0.2;
  const auto c = ac::one_mean_certificates(set, ac::one_mean_coreset(set, eps));
  EXPECT_LE(c.worst(), eps / 2);
}

TEST(Rff, UnitNormAndKernelApproximation) {
  const ac::RandomFourierMap map(3, 4000, 1.5, 7);
  EXPECT_EQ(map.output_dim(), 4000u);
  const std::vector<double> x{0.1, -0.4, 0.7}, y{0.5, 0.2, 0.0};
  std::vector<double> px(4000), py(4000);
  map.apply(x, px);
  map.apply(y, py);
  EXPECT_NEAR(ac::squared_norm(px), 1.0, 1e-12);
  double d2 = 0.0;
  for (int j = 0; j < 3; ++j) d2 += (x[j] - y[j]) * (x[j] - y[j]);
  // Monte Carlo estimate of the Gaussian kernel; standard error about 1/sqrt(2000).
  EXPECT_NEAR(ac::dot(px, py), std::exp(-d2 / (2 * 1.5 * 1.5)), 0.05);
  EXPECT_THROW(ac::RandomFourierMap(3, 5, 1.0, 1), ac::InvalidInput);
  EXPECT_THROW(ac::RandomFourierMap(3, 4, 0.0, 1), ac::InvalidInput);
}

TEST(Kde, IdentityMapEqualsSummarizationCoreset) {
  const auto pts = gaussian_matrix(400, 4, 9);
  const double eps = 0.3;
  EXPECT_EQ(ac::kde_coreset(pts, ac::IdentityMap(4), eps),
            ac::coreset(ac::WeightedSet::uniform(pts), eps * eps));
}

TEST(Kde, MeanEmbeddingCloseAndBoundsProbeDeviation) {
  const auto pts = gaussian_matrix(500, 2, 10);
  const ac::RandomFourierMap map(2, 200, 1.0, 11);
  const auto mapped = ac::map_points(pts, map);
  const double eps = 0.3;
  const auto u = ac::kde_coreset(pts, map, eps);
  const auto mu = ac::mean_embedding(mapped);
  const auto mu_u = ac::mean_embedding(mapped, &u);
  double gap2 = 0.0;
  for (std::size_t j = 0; j < mu.size(); ++j) gap2 += std::pow(mu[j] - mu_u[j], 2);
  // Mapped points lie on the unit sphere, so sigma^2 <= 1.
  EXPECT_LE(gap2, eps * eps);
  std::vector<double> probe(200);
  for (std::size_t i = 0; i < 20; ++i) {
    map.apply(pts.row(i), probe);
    EXPECT_LE(std::abs(ac::dot(probe, mu) - ac::dot(probe, mu_u)), std::sqrt(gap2) + 1e-12);
  }
}

TEST(DimCoreset, SizeBoundFormula) {
  EXPECT_DOUBLE_EQ(ac::dim_coreset_size_bound(3, 0.3), 320000.0);
  EXPECT_DOUBLE_EQ(ac::dim_coreset_size_bound(1, 0.25), 51200.0);
}

TEST(DimCoreset, ValidatesArguments) {
  const auto a = gaussian_matrix(20, 4, 1);
  EXPECT_THROW(ac::dim_coreset(a, 0, 0.3), ac::InvalidInput);
  EXPECT_THROW(ac::dim_coreset(a, 5, 0.3), ac::InvalidInput);
  EXPECT_THROW(ac::dim_coreset(a, 2, 0.5), ac::InvalidInput);
  EXPECT_THROW(ac::dim_coreset(gaussian_matrix(4, 4, 1), 2, 0.3), ac::InvalidInput);
}

TEST(DimCoreset, ZeroMatrixAndExactRankTakeExactPath) {
  const auto z = ac::dim_coreset(ac::DenseMatrix(10, 3, 0.0), 1, 0.3);
  EXPECT_TRUE(z.exact);
  EXPECT_EQ(z.weights, std::vector<double>(10, 1.0));
  // Identical rows: [A | r] has rank one, so k = 1 leaves a vanishing trailing block.
  ac::DenseMatrix a(12, 3);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = j + 2.0;
  EXPECT_TRUE(ac::dim_coreset(a, 1, 0.3).exact);
  // Rank-one rows that are not identical still need the reduction.
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = (i + 1.0) * (j + 2.0);
  EXPECT_FALSE(ac::dim_coreset(a, 1, 0.3).exact);
}

TEST(DimCoreset, RatioBoundOnRandomSubspaces) {
  const auto a = gaussian_matrix(400, 5, 21);
  const std::size_t k = 2;
  const double eps = 0.3;
  const auto r = ac::dim_coreset(a, k, eps);
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(r.nnz, static_cast<std::size_t>(std::count_if(
                       r.weights.begin(), r.weights.end(), [](double w) { return w != 0.0; })));
  EXPECT_LE(static_cast<double>(r.nnz), ac::dim_coreset_size_bound(k, eps));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const auto x = ac::random_orthogonal(5, 5 - k, 100 + t);
    std::vector<double> offset(5);
    for (double& v : offset) v = g(rng);
    const double full = ac::subspace_cost(a, {}, offset, x);
    const double approx = ac::subspace_cost(a, r.weights, offset, x);
    EXPECT_LE(std::abs(1.0 - approx / full), 5 * eps);
  }
}

TEST(SubspaceCost, MatchesDirectFormula) {
  const ac::DenseMatrix a{{1.0, 2.0}, {3.0, -1.0}};
  const ac::DenseMatrix x{{1.0}, {0.0}};
  const std::vector<double> offset{1.0, 0.0};
  EXPECT_DOUBLE_EQ(ac::subspace_cost(a, {}, offset, x), 0.0 + 4.0);
  EXPECT_DOUBLE_EQ(ac::subspace_cost(a, std::vector<double>{5.0, 0.5}, offset, x), 2.0);
}
