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
#include <vector>

#include "avgcoreset/core.hpp"
#include "avgcoreset/matrix.hpp"

namespace avgcoreset {

struct SampleSpec {
  std::size_t size = 1;
  std::uint64_t seed = 0;
};

/// i.i.d. uniform picks; each pick of point i carries m_i * n / size (which is
/// |m|_1 / size for unit weights). Duplicates are summed.
SparseWeights uniform_sample(const WeightedSet& set, const SampleSpec& spec);

/// Sampling probabilities proportional to 1/n + |q|^2 / sum |q'|^2,
/// normalized to sum to one. All-zero input yields the uniform distribution.
std::vector<double> sum_sensitivity_probabilities(const WeightedSet& set);

/// Importance sampling by sum_sensitivity_probabilities; a pick of i carries
/// m_i / (size * prob_i).
SparseWeights sensitivity_sample_sum(const WeightedSet& set, const SampleSpec& spec);

/// Leverage scores |u_i|^2 of the rank-k projection of A, normalized to sum to
/// one. Uses rank(A) directions when rank(A) < k; a zero matrix yields the
/// uniform distribution.
std::vector<double> svd_sensitivity_probabilities(const DenseMatrix& a, std::size_t k);

/// Importance sampling of rows by svd_sensitivity_probabilities; a pick of row
/// i carries 1 / (size * prob_i).
SparseWeights sensitivity_sample_svd(const DenseMatrix& a, std::size_t k, const SampleSpec& spec);

}  // namespace avgcoreset
