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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avgcoreset/core.hpp"
#include "avgcoreset/matrix.hpp"

namespace avgcoreset {

// ---------------------------------------------------------------------------
// Input

/// Comma-separated numeric table. Blank lines are skipped. Throws ParseError
/// (1-based line and field) or RaggedRows.
DenseMatrix parse_csv(std::string_view text, bool has_header);
DenseMatrix load_csv(const std::string& path, bool has_header);

enum class SyntheticKind { kGaussian, kHeavyTail, kLowRankNoise };

/// "gaussian:n=1000,d=10,seed=1", "heavy-tail:..." or
/// "low-rank+noise:n=..,d=..,seed=..,rank=3,noise=0.01".
struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::kGaussian;
  std::size_t n = 1000;
  std::size_t d = 10;
  std::uint64_t seed = 0;
  std::size_t rank = 3;
  double noise = 0.01;
};

SyntheticSpec parse_synthetic(std::string_view spec);

/// Gaussian: i.i.d. N(0, 1) entries. Heavy-tail: Gaussian with max(1, n / 100)
/// randomly chosen rows scaled by 100. Low-rank+noise: (n x rank)(rank x d)
/// Gaussian product plus noise * N(0, 1).
DenseMatrix generate(const SyntheticSpec& spec);

// ---------------------------------------------------------------------------
// Output

/// One "index,weight" line per nonzero, weights with 17 significant digits.
void write_weights_csv(std::ostream& out, const SparseWeights& u);
SparseWeights parse_weights_csv(std::string_view text);

/// Shortest %.17g rendering used by every report writer.
std::string format_double(double x);

// ---------------------------------------------------------------------------
// Metrics

/// |mu - mu_s|^2 with mu_s the u / |u|_1 weighted mean of the support.
double metric_summarization(const WeightedSet& full, const SparseWeights& u);

/// |A|_F^2 - |A V|_F^2 for orthonormal columns V (d x k).
double svd_cost(const DenseMatrix& a, const DenseMatrix& v);

/// |(c* - c') / c*| where c* is the optimal rank-k cost of A and c' the cost on
/// A of the optimal subspace of diag(sqrt(u)) A. Requires k < d. When c* is
/// numerically zero: returns 0 if c' is too, else throws ExactRankCase.
double metric_svd(const DenseMatrix& a, std::size_t k, std::span<const double> row_weights);

// ---------------------------------------------------------------------------
// Experiments

enum class Algorithm {
  kSlow,
  kFast,
  kProb,
  kUniform,
  kSensSum,
  kOurSvdSlow,
  kOurSvdFast,
  kSensSvd,
  kStream
};

Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm a);
bool is_svd_algorithm(Algorithm a);

struct ExperimentConfig {
  std::vector<Algorithm> algorithms;
  std::string input_path;                    // used when synthetic is empty
  bool has_header = false;
  std::optional<SyntheticSpec> synthetic;
  std::vector<double> epsilons;              // exactly one of epsilons / sizes is nonempty
  std::vector<std::size_t> sizes;
  std::size_t trials = 1;
  double delta = 0.1;
  std::size_t k = 1;                         // svd algorithms only
  std::uint64_t seed = 0;                    // trial t uses seed + t
  std::size_t chunk_size = 1000;             // stream only
};

struct ExperimentRow {
  std::string algorithm;
  std::size_t n = 0;
  std::size_t d = 0;
  std::string param_kind;                    // "eps" or "size"
  double param = 0.0;
  std::size_t coreset_size = 0;
  double error = 0.0;
  double time_ms = 0.0;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  std::string status = "ok";                 // "ok" or the error message
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
};

/// Validates the config and loads or generates the data set.
DenseMatrix load_dataset(const ExperimentConfig& config);

/// One row per (algorithm, parameter, trial). Errors in a cell are recorded
/// in its status and the remaining cells still run. Only the construction is
/// timed.
ExperimentReport run_experiment(const ExperimentConfig& config);
ExperimentReport run_experiment(const ExperimentConfig& config, const DenseMatrix& data);

/// With include_timing = false the output depends only on config and seeds.
void write_report_csv(std::ostream& out, const ExperimentReport& report, bool include_timing = true);
void write_report_json(std::ostream& out, const ExperimentReport& report, bool include_timing = true);

}  // namespace avgcoreset
