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
#include <numeric>

#include "avgcoreset/baselines.hpp"
#include "avgcoreset/errors.hpp"
#include "avgcoreset/linalg.hpp"
#include "random_data.hpp"

namespace ac = avgcoreset;
using ac::testing::gaussian_matrix;

namespace {

// Mean and standard error of sum_i u_i q_i[0] across seeds, against sum_i m_i q_i[0].
template <typename Sampler>
void expect_unbiased(const ac::WeightedSet& set, Sampler sample, std::size_t trials) {
  double target = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) target += set.weights()[i] * set.point(i)[0];
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t s = 0; s < trials; ++s) {
    const ac::SparseWeights u = sample(s);
    double est = 0.0;
    for (const auto& e : u.entries()) est += e.weight * set.point(e.index)[0];
    sum += est;
    sum2 += est * est;
  }
  const double t = static_cast<double>(trials);
  const double mean = sum / t;
  const double se = std::sqrt((sum2 / t - mean * mean) / t);
  EXPECT_LE(std::abs(mean - target), 4 * se) << "mean " << mean << " target " << target;
}

}  // namespace

TEST(Uniform, SinglePointGetsFullWeight) {
  const ac::WeightedSet set(ac::DenseMatrix{{2.0, 3.0}}, {7.0});
  EXPECT_EQ(ac::uniform_sample(set, {1, 0}), ac::SparseWeights::from_entries({{0, 7.0}}));
}

TEST(Uniform, SeededAndSumsToTotalForUnitWeights) {
  const auto set = ac::WeightedSet::uniform(gaussian_matrix(100, 2, 1));
  const auto a = ac::uniform_sample(set, {30, 5});
  EXPECT_EQ(a, ac::uniform_sample(set, {30, 5}));
  EXPECT_NEAR(a.total(), 100.0, 1e-9);
  EXPECT_LE(a.nnz(), 30u);
  EXPECT_THROW(ac::uniform_sample(set, {0, 5}), ac::InvalidInput);
}

TEST(Uniform, UnbiasedForWeightedSum) {
  const auto set = ac::testing::random_weighted_set(40, 2, 3);
  expect_unbiased(set, [&](std::size_t s) { return ac::uniform_sample(set, {5, s}); }, 10000);
}

TEST(SensitivitySum, ProbabilitiesSumToOneAndFavourLargePoints) {
  auto pts = gaussian_matrix(50, 3, 2);
  for (double& x : pts.row(7)) x *= 100.0;
  const auto p = ac::sum_sensitivity_probabilities(ac::WeightedSet::uniform(pts));
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
  EXPECT_GT(p[7], 1.0 / 50);
  // s_i = 1/n + |q_i|^2 / sum |q|^2 and sum s = 2.
  double total = 0.0;
  for (std::size_t i = 0; i < 50; ++i) total += ac::squared_norm(pts.row(i));
  EXPECT_NEAR(p[7], (1.0 / 50 + ac::squared_norm(pts.row(7)) / total) / 2.0, 1e-15);
}

TEST(SensitivitySum, EqualNormsGiveUniformProbabilities) {
  const ac::DenseMatrix pts{{1.0, 0.0}, {0.0, 1.0}, {-0.6, 0.8}, {0.0, -1.0}};
  for (double p : ac::sum_sensitivity_probabilities(ac::WeightedSet::uniform(pts)))
    EXPECT_NEAR(p, 0.25, 1e-15);
}

TEST(SensitivitySum, AllZeroFallsBackToUniform) {
  const auto set = ac::WeightedSet::uniform(ac::DenseMatrix(4, 2, 0.0));
  for (double p : ac::sum_sensitivity_probabilities(set)) EXPECT_DOUBLE_EQ(p, 0.25);
  EXPECT_NEAR(ac::sensitivity_sample_sum(set, {8, 1}).total(), 4.0, 1e-12);
}

TEST(SensitivitySum, UnbiasedForWeightedSum) {
  auto pts = gaussian_matrix(40, 2, 4);
  for (double& x : pts.row(0)) x *= 30.0;
  const ac::WeightedSet set(pts, ac::testing::lognormal_weights(40, 5));
  expect_unbiased(set, [&](std::size_t s) { return ac::sensitivity_sample_sum(set, {5, s}); },
                  10000);
}

TEST(SensitivitySvd, OrthonormalRowsAreUniform) {
  const auto q = ac::random_orthogonal(6, 6, 3).transpose();
  for (double p : ac::svd_sensitivity_probabilities(q, 6)) EXPECT_NEAR(p, 1.0 / 6, 1e-12);
}

TEST(SensitivitySvd, RankOneProportionalToSquaredRowNorms) {
  ac::DenseMatrix a(5, 3);
  const std::vector<double> scale{1.0, -2.0, 0.5, 3.0, 0.0};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = scale[i] * (j + 1.0);
  const double total = 1.0 + 4.0 + 0.25 + 9.0;
  // k = 2 exceeds the rank and uses the single nonzero direction.
  for (std::size_t k : {1u, 2u}) {
    const auto p = ac::svd_sensitivity_probabilities(a, k);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(p[i], scale[i] * scale[i] / total, 1e-12);
  }
}

TEST(SensitivitySvd, SumsToOneSeededAndValidated) {
  const auto a = gaussian_matrix(60, 5, 6);
  const auto p = ac::svd_sensitivity_probabilities(a, 2);
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
  EXPECT_EQ(ac::sensitivity_sample_svd(a, 2, {20, 3}), ac::sensitivity_sample_svd(a, 2, {20, 3}));
  EXPECT_THROW(ac::svd_sensitivity_probabilities(a, 0), ac::InvalidInput);
  EXPECT_THROW(ac::svd_sensitivity_probabilities(a, 61), ac::InvalidInput);
  const auto zero = ac::svd_sensitivity_probabilities(ac::DenseMatrix(4, 2, 0.0), 1);
  for (double v : zero) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(SensitivitySvd, UnbiasedForRowCount) {
  // Weighted count of rows: E[sum u_i] = n.
  const auto a = gaussian_matrix(30, 4, 8);
  double sum = 0.0, sum2 = 0.0;
  const std::size_t trials = 10000;
  for (std::size_t s = 0; s < trials; ++s) {
    const double t = ac::sensitivity_sample_svd(a, 2, {4, s}).total();
    sum += t;
    sum2 += t * t;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sum2 / trials - mean * mean) / trials);
  EXPECT_LE(std::abs(mean - 30.0), 4 * se);
}
