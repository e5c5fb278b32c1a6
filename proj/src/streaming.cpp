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

#include "avgcoreset/streaming.hpp"

#include <algorithm>
#include <utility>

#include "avgcoreset/errors.hpp"

namespace avgcoreset {

namespace {

StreamBucket merge(const StreamBucket& a, const StreamBucket& b) {
  const std::size_t d = a.points.cols();
  StreamBucket out{DenseMatrix(a.size() + b.size(), d), {}, {}};
  out.weights.reserve(out.points.rows());
  out.indices.reserve(out.points.rows());
  // Keep global indices increasing so the merged bucket is order independent.
  std::size_t ia = 0, ib = 0, row = 0;
  auto take = [&](const StreamBucket& src, std::size_t& i) {
    auto from = src.points.row(i);
    std::copy(from.begin(), from.end(), out.points.row(row++).begin());
    out.weights.push_back(src.weights[i]);
    out.indices.push_back(src.indices[i]);
    ++i;
  };
  while (ia < a.size() || ib < b.size()) {
    if (ib == b.size() || (ia < a.size() && a.indices[ia] < b.indices[ib])) {
      take(a, ia);
    } else {
      take(b, ib);
    }
  }
  return out;
}

}  // namespace

StreamSummary::StreamSummary(double epsilon, std::size_t chunk_size, Mode mode)
    : epsilon_(epsilon), chunk_size_(chunk_size), mode_(mode) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
  if (chunk_size < 2) throw InvalidInput("chunk_size must be at least 2");
}

StreamBucket StreamSummary::reduce(StreamBucket bucket) const {
  const WeightedSet set(std::move(bucket.points), std::move(bucket.weights));
  const SparseWeights u = coreset(set, epsilon_, mode_);
  StreamBucket out{DenseMatrix(u.nnz(), set.dim()), {}, {}};
  std::size_t row = 0;
  for (const auto& e : u.entries()) {
    auto from = set.point(e.index);
    std::copy(from.begin(), from.end(), out.points.row(row++).begin());
    out.weights.push_back(e.weight);
    out.indices.push_back(bucket.indices[e.index]);
  }
  return out;
}

void StreamSummary::insert(const WeightedSet& chunk) {
  if (chunk.size() == 0) throw InvalidInput("stream chunk is empty");
  for (const auto& b : levels_) {
    if (b && b->points.cols() != chunk.dim()) throw InvalidInput("chunk dimension mismatch");
  }
  StreamBucket leaf{chunk.points(), {chunk.weights().begin(), chunk.weights().end()}, {}};
  leaf.indices.resize(chunk.size());
  for (std::size_t i = 0; i < chunk.size(); ++i) leaf.indices[i] = points_seen_ + i;
  StreamBucket carry = reduce(std::move(leaf));
  points_seen_ += chunk.size();
  ++chunks_seen_;

  std::size_t level = 0;
  while (level < levels_.size() && levels_[level]) {
    carry = reduce(merge(*levels_[level], carry));
    levels_[level].reset();
    ++level;
  }
  if (level == levels_.size()) levels_.emplace_back();
  levels_[level] = std::move(carry);
  max_occupied_ = std::max(max_occupied_, occupied_levels());
}

SparseWeights StreamSummary::finalize() const {
  std::vector<const StreamBucket*> occupied;
  for (const auto& b : levels_)
    if (b) occupied.push_back(&*b);
  if (occupied.empty()) throw EmptyStream();

  StreamBucket all = *occupied.front();
  for (std::size_t i = 1; i < occupied.size(); ++i) all = merge(all, *occupied[i]);
  if (occupied.size() > 1) all = reduce(std::move(all));

  std::vector<SparseWeights::Entry> entries;
  entries.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) entries.push_back({all.indices[i], all.weights[i]});
  return SparseWeights::from_entries(std::move(entries));
}

std::size_t StreamSummary::occupied_levels() const {
  return static_cast<std::size_t>(
      std::count_if(levels_.begin(), levels_.end(), [](const auto& b) { return b.has_value(); }));
}

std::size_t StreamSummary::retained_points() const {
  std::size_t total = 0;
  for (const auto& b : levels_)
    if (b) total += b->size();
  return total;
}

SparseWeights stream_coreset(const WeightedSet& set, double epsilon, std::size_t chunk_size,
                             Mode mode) {
  StreamSummary summary(epsilon, chunk_size, mode);
  const std::size_t n = set.size();
  const std::size_t d = set.dim();
  for (std::size_t start = 0; start < n; start += chunk_size) {
    const std::size_t len = std::min(chunk_size, n - start);
    DenseMatrix pts(len, d);
    for (std::size_t i = 0; i < len; ++i) {
      auto from = set.point(start + i);
      std::copy(from.begin(), from.end(), pts.row(i).begin());
    }
    const auto w = set.weights().subspan(start, len);
    summary.insert(WeightedSet(std::move(pts), {w.begin(), w.end()}));
  }
  return summary.finalize();
}

}  // namespace avgcoreset
