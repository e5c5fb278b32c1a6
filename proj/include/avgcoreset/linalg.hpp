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

#include "avgcoreset/matrix.hpp"

namespace avgcoreset {

/// Thin SVD A = U diag(S) V^T with m = min(rows, cols): U is rows x m with
/// orthonormal columns, S is nonincreasing, V is cols x m with orthonormal
/// columns. The largest-magnitude entry of every column of V is nonnegative.
struct SvdFactors {
  DenseMatrix U;
  std::vector<double> S;
  DenseMatrix V;
};

inline constexpr int kMaxJacobiSweeps = 60;

/// One-sided (Hestenes) Jacobi SVD. Throws ConvergenceFailure if the columns
/// are not mutually orthogonal after kMaxJacobiSweeps sweeps.
SvdFactors svd(const DenseMatrix& a);

double frobenius_norm(const DenseMatrix& a);

/// d x cols matrix with orthonormal columns from seeded Gaussian columns.
DenseMatrix random_orthogonal(std::size_t d, std::size_t cols, std::uint64_t seed);

/// U diag(S) V^T.
DenseMatrix reconstruct(const SvdFactors& f);

/// Largest |X^T X - I| entry.
double orthonormality_error(const DenseMatrix& x);

}  // namespace avgcoreset
