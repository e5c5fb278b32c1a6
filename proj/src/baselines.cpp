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

#include "avgcoreset/baselines.hpp"

#include <algorithm>
#include <random>

#include "avgcoreset/errors.hpp"
#include "avgcoreset/linalg.hpp"

namespace avgcoreset {

namespace {

void check_spec(const SampleSpec& spec) {
  if (spec.size == 0) throw InvalidInput("sample size must be positive");
}

SparseWeights importance_sample(const std::vector<double>& probs,
                                const std::vector<double>& point_weight, const SampleSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
  std::vector<SparseWeights::Entry> entries;
  entries.reserve(spec.size);
  const double size = static_cast<double>(spec.size);
  for (std::size_t t = 0; t < spec.size; ++t) {
    const std::size_t i = pick(rng);
    entries.push_back({i, point_weight[i] / (size * probs[i])});
  }
  return SparseWeights::accumulate(std::move(entries));
}

}  // namespace

SparseWeights uniform_sample(const WeightedSet& set, const SampleSpec& spec) {
  check_spec(spec);
  const std::size_t n = set.size();
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<SparseWeights::Entry> entries;
  entries.reserve(spec.size);
  const double scale = static_cast<double>(n) / static_cast<double>(spec.size);
  for (std::size_t t = 0; t < spec.size; ++t) {
    const std::size_t i = pick(rng);
    entries.push_back({i, set.weights()[i] * scale});
  }
  return SparseWeights::accumulate(std::move(entries));
}

std::vector<double> sum_sensitivity_probabilities(const WeightedSet& set) {
  const std::size_t n = set.size();
  std::vector<double> norms(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    norms[i] = squared_norm(set.point(i));
    total += norms[i];
  }
  std::vector<double> probs(n, 1.0 / static_cast<double>(n));
  if (total == 0.0) return probs;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    probs[i] = 1.0 / static_cast<double>(n) + norms[i] / total;
    sum += probs[i];
  }
  for (double& p : probs) p /= sum;
  return probs;
}

SparseWeights sensitivity_sample_sum(const WeightedSet& set, const SampleSpec& spec) {
  check_spec(spec);
  const auto probs = sum_sensitivity_probabilities(set);
  const std::vector<double> w(set.weights().begin(), set.weights().end());
  return importance_sample(probs, w, spec);
}

std::vector<double> svd_sensitivity_probabilities(const DenseMatrix& a, std::size_t k) {
  const std::size_t n = a.rows();
  if (k < 1 || k > n) throw InvalidInput("svd sensitivity needs 1 <= k <= n");
  const SvdFactors f = svd(a);
  const double tol = f.S.empty() ? 0.0 : f.S[0] * 1e-12 * static_cast<double>(std::max(n, a.cols()));
  std::size_t rank = 0;
  while (rank < f.S.size() && f.S[rank] > tol) ++rank;
  const std::size_t use = std::min(k, rank);

  std::vector<double> probs(n, 1.0 / static_cast<double>(n));
  if (use == 0) return probs;
  // The projection A V_k V_k^T = U_k S_k V_k^T has left factor U_k.
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < use; ++j) s += f.U(i, j) * f.U(i, j);
    probs[i] = s;
    total += s;
  }
  for (double& p : probs) p /= total;
  return probs;
}

SparseWeights sensitivity_sample_svd(const DenseMatrix& a, std::size_t k, const SampleSpec& spec) {
  check_spec(spec);
  const auto probs = svd_sensitivity_probabilities(a, k);
  return importance_sample(probs, std::vector<double>(a.rows(), 1.0), spec);
}

}  // namespace avgcoreset
