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
#include <functional>
#include <span>

#include "avgcoreset/matrix.hpp"

namespace avgcoreset {

/// Read-only access to n points of a fixed dimension. Points are either held
/// in a row-major buffer or generated on demand, which lets the solvers run on
/// point sets too large to materialize.
class PointSource {
 public:
  virtual ~PointSource() = default;

  virtual std::size_t size() const = 0;
  virtual std::size_t dim() const = 0;

  /// Row-major storage of all points, or an empty span for generated sources.
  virtual std::span<const double> contiguous() const { return {}; }

  /// Writes point i into out (out.size() == dim()).
  virtual void row(std::size_t i, std::span<double> out) const = 0;
};

class MatrixSource final : public PointSource {
 public:
  explicit MatrixSource(const DenseMatrix& m) : m_(&m) {}

  std::size_t size() const override { return m_->rows(); }
  std::size_t dim() const override { return m_->cols(); }
  std::span<const double> contiguous() const override { return m_->data(); }
  void row(std::size_t i, std::span<double> out) const override;

 private:
  const DenseMatrix* m_;
};

/// Points produced by a callback; nothing is cached.
class GeneratedSource final : public PointSource {
 public:
  using Generator = std::function<void(std::size_t, std::span<double>)>;

  GeneratedSource(std::size_t n, std::size_t dim, Generator gen)
      : n_(n), dim_(dim), gen_(std::move(gen)) {}

  std::size_t size() const override { return n_; }
  std::size_t dim() const override { return dim_; }
  void row(std::size_t i, std::span<double> out) const override { gen_(i, out); }

 private:
  std::size_t n_;
  std::size_t dim_;
  Generator gen_;
};

/// Calls fn(i, point_i) for every point in order, without copying when the
/// source is contiguous.
template <typename Fn>
void for_each_point(const PointSource& src, Fn&& fn) {
  const std::size_t n = src.size();
  const std::size_t d = src.dim();
  if (auto data = src.contiguous(); !data.empty()) {
    for (std::size_t i = 0; i < n; ++i) fn(i, data.subspan(i * d, d));
    return;
  }
  std::vector<double> scratch(d);
  for (std::size_t i = 0; i < n; ++i) {
    src.row(i, scratch);
    fn(i, std::span<const double>(scratch));
  }
}

DenseMatrix materialize(const PointSource& src);

}  // namespace avgcoreset
