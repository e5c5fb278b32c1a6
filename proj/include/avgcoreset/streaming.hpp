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
#include <optional>
#include <vector>

#include "avgcoreset/core.hpp"
#include "avgcoreset/coresets.hpp"
#include "avgcoreset/matrix.hpp"

namespace avgcoreset {

/// Reduced weighted points together with their positions in the stream.
struct StreamBucket {
  DenseMatrix points;
  std::vector<double> weights;
  std::vector<std::size_t> indices;  // global stream positions, increasing

  std::size_t size() const { return indices.size(); }
};

/// Merge-and-reduce tree of vector-summarization coresets. Level l holds at
/// most one bucket summarizing 2^l chunks; inserting carries like a binary
/// counter. Every reduce uses the same epsilon.
class StreamSummary {
 public:
  StreamSummary(double epsilon, std::size_t chunk_size, Mode mode = Mode::kSlow);

  /// Reduces the chunk into level 0 and carries upward. Chunk point i gets the
  /// global index points_seen() + i.
  void insert(const WeightedSet& chunk);

  /// Single bucket: returned as is. Otherwise all buckets are merged and
  /// reduced once more. Throws EmptyStream when nothing was inserted.
  SparseWeights finalize() const;

  double epsilon() const { return epsilon_; }
  std::size_t chunk_size() const { return chunk_size_; }
  std::size_t points_seen() const { return points_seen_; }
  std::size_t chunks_seen() const { return chunks_seen_; }
  std::size_t occupied_levels() const;
  /// Largest occupied_levels() observed after any insert.
  std::size_t max_occupied_levels() const { return max_occupied_; }
  std::size_t retained_points() const;
  const std::vector<std::optional<StreamBucket>>& levels() const { return levels_; }

 private:
  StreamBucket reduce(StreamBucket bucket) const;

  double epsilon_;
  std::size_t chunk_size_;
  Mode mode_;
  std::size_t points_seen_ = 0;
  std::size_t chunks_seen_ = 0;
  std::size_t max_occupied_ = 0;
  std::vector<std::optional<StreamBucket>> levels_;
};

/// Feeds the rows of (points, weights) in consecutive chunks of chunk_size
/// (the last one may be shorter) and finalizes.
SparseWeights stream_coreset(const WeightedSet& set, double epsilon, std::size_t chunk_size,
                             Mode mode = Mode::kSlow);

}  // namespace avgcoreset
