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

#include "avgcoreset/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "avgcoreset/errors.hpp"

namespace avgcoreset {

namespace {

constexpr double kOrthogonalityTolerance = 1e-14;

using Column = std::vector<double>;

double col_dot(const Column& a, const Column& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void rotate(Column& a, Column& b, double c, double s) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i];
    const double y = b[i];
    a[i] = c * x - s * y;
    b[i] = s * x + c * y;
  }
}

// Modified Gram-Schmidt in place. Columns flagged in `replace` (or that
// collapse to zero) are rebuilt from standard basis vectors so the result is
// always orthonormal.
void orthonormalize(std::vector<Column>& cols, std::vector<bool> replace) {
  const std::size_t n = cols.empty() ? 0 : cols[0].size();
  std::size_t next_basis = 0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      if (replace[j]) break;
      for (std::size_t i = 0; i < j; ++i) {
        const double proj = col_dot(cols[i], cols[j]);
        for (std::size_t r = 0; r < n; ++r) cols[j][r] -= proj * cols[i][r];
      }
      const double norm = std::sqrt(col_dot(cols[j], cols[j]));
      if (norm < 1e-8) {
        replace[j] = true;
        break;
      }
      for (double& v : cols[j]) v /= norm;
    }
    while (replace[j]) {
      if (next_basis >= n) throw NumericalError("cannot complete orthonormal basis");
      std::fill(cols[j].begin(), cols[j].end(), 0.0);
      cols[j][next_basis++] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < j; ++i) {
          const double proj = col_dot(cols[i], cols[j]);
          for (std::size_t r = 0; r < n; ++r) cols[j][r] -= proj * cols[i][r];
        }
      }
      const double norm = std::sqrt(col_dot(cols[j], cols[j]));
      if (norm > 0.5) {
        for (double& v : cols[j]) v /= norm;
        replace[j] = false;
      }
    }
  }
}

// Requires rows >= cols.
SvdFactors jacobi_tall(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  std::vector<Column> w(m, Column(n));
  std::vector<Column> v(m, Column(m, 0.0));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) w[j][i] = a(i, j);
    v[j][j] = 1.0;
  }

  // Columns below this squared norm are rounding noise of a rank-deficient
  // input; rotating against them never reaches the relative tolerance.
  double frob2 = 0.0;
  for (const auto& col : w) frob2 += col_dot(col, col);
  const double noise2 = frob2 * 1e-30;

  bool converged = false;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double alpha = col_dot(w[p], w[p]);
        const double beta = col_dot(w[q], w[q]);
        const double gamma = col_dot(w[p], w[q]);
        if (alpha <= noise2 || beta <= noise2) continue;
        if (std::abs(gamma) <= kOrthogonalityTolerance * std::sqrt(alpha * beta)) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(w[p], w[q], c, s);
        rotate(v[p], v[q], c, s);
      }
    }
  }
  if (!converged) throw ConvergenceFailure(kMaxJacobiSweeps);

  std::vector<double> norms(m);
  for (std::size_t j = 0; j < m; ++j) norms[j] = std::sqrt(col_dot(w[j], w[j]));
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  const double smax = m ? norms[order[0]] : 0.0;
  const double zero_cut = smax * static_cast<double>(std::max(n, m)) * 1e-15;
  std::vector<Column> u(m);
  std::vector<Column> vs(m);
  std::vector<double> s(m);
  std::vector<bool> replace(m, false);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t j = order[k];
    s[k] = norms[j];
    vs[k] = v[j];
    u[k] = w[j];
    if (s[k] <= zero_cut || s[k] == 0.0) {
      replace[k] = true;
    } else {
      for (double& x : u[k]) x /= s[k];
    }
  }
  orthonormalize(u, replace);

  SvdFactors f{DenseMatrix(n, m), s, DenseMatrix(m, m)};
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < n; ++i) f.U(i, k) = u[k][i];
    for (std::size_t i = 0; i < m; ++i) f.V(i, k) = vs[k][i];
  }
  return f;
}

void fix_signs(SvdFactors& f) {
  for (std::size_t k = 0; k < f.S.size(); ++k) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < f.V.rows(); ++i) {
      if (std::abs(f.V(i, k)) > best) {
        best = std::abs(f.V(i, k));
        arg = i;
      }
    }
    if (f.V(arg, k) < 0.0) {
      for (std::size_t i = 0; i < f.V.rows(); ++i) f.V(i, k) = -f.V(i, k);
      for (std::size_t i = 0; i < f.U.rows(); ++i) f.U(i, k) = -f.U(i, k);
    }
  }
}

}  // namespace

SvdFactors svd(const DenseMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) throw InvalidInput("svd of an empty matrix");
  for (double x : a.data())
    if (!std::isfinite(x)) throw InvalidInput("svd input has non-finite entries");

  SvdFactors f;
  if (a.rows() >= a.cols()) {
    f = jacobi_tall(a);
  } else {
    SvdFactors t = jacobi_tall(a.transpose());
    f.U = std::move(t.V);
    f.S = std::move(t.S);
    f.V = std::move(t.U);
  }
  fix_signs(f);
  return f;
}

double frobenius_norm(const DenseMatrix& a) { return std::sqrt(squared_norm(a.data())); }

DenseMatrix random_orthogonal(std::size_t d, std::size_t cols, std::uint64_t seed) {
  if (cols > d) throw InvalidInput("cannot fit more orthonormal columns than dimensions");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Column> c(cols, Column(d));
  for (auto& col : c)
    for (double& x : col) x = gauss(rng);
  orthonormalize(c, std::vector<bool>(cols, false));
  DenseMatrix out(d, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < d; ++i) out(i, j) = c[j][i];
  return out;
}

DenseMatrix reconstruct(const SvdFactors& f) {
  DenseMatrix us = f.U;
  for (std::size_t i = 0; i < us.rows(); ++i)
    for (std::size_t k = 0; k < f.S.size(); ++k) us(i, k) *= f.S[k];
  return us * f.V.transpose();
}

double orthonormality_error(const DenseMatrix& x) {
  const DenseMatrix g = x.transpose() * x;
  double worst = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

}  // namespace avgcoreset
