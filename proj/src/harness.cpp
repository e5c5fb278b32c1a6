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

#include "avgcoreset/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "avgcoreset/apps.hpp"
#include "avgcoreset/baselines.hpp"
#include "avgcoreset/coresets.hpp"
#include "avgcoreset/errors.hpp"
#include "avgcoreset/linalg.hpp"
#include "avgcoreset/streaming.hpp"

namespace avgcoreset {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_number(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size() && std::isfinite(out);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw InvalidInput("synthetic spec: bad value for " + std::string(key));
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

std::size_t size_for_epsilon(double eps) {
  return static_cast<std::size_t>(std::ceil(128.0 / eps - 1e-9));
}

struct CellResult {
  std::size_t coreset_size = 0;
  double error = 0.0;
  double time_ms = 0.0;
};

CellResult run_cell(Algorithm algo, const DenseMatrix& data, const WeightedSet& set,
                    const ExperimentConfig& config, bool by_size, double param,
                    std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  const std::size_t size = by_size ? static_cast<std::size_t>(param) : 0;
  CellResult cell;

  auto summarize = [&](auto&& build) {
    const auto start = clock::now();
    const SparseWeights u = build();
    cell.time_ms = elapsed_ms(start);
    cell.coreset_size = u.nnz();
    cell.error = metric_summarization(set, u);
  };
  auto reduce_rows = [&](auto&& build) {
    const auto start = clock::now();
    const std::vector<double> w = build();
    cell.time_ms = elapsed_ms(start);
    cell.coreset_size = static_cast<std::size_t>(
        std::count_if(w.begin(), w.end(), [](double x) { return x != 0.0; }));
    cell.error = metric_svd(data, config.k, w);
  };

  switch (algo) {
    case Algorithm::kSlow:
    case Algorithm::kFast: {
      const Mode mode = algo == Algorithm::kSlow ? Mode::kSlow : Mode::kFast;
      summarize([&] {
        return by_size ? coreset_of_size(set, size, mode) : coreset(set, param, mode);
      });
      break;
    }
    case Algorithm::kProb: {
      const double eps = by_size ? 4.0 / param : param;
      summarize([&] {
        return prob_coreset_weights(prob_coreset(data, eps, config.delta, seed),
                                    set.total_weight());
      });
      break;
    }
    case Algorithm::kUniform:
    case Algorithm::kSensSum: {
      const SampleSpec spec{by_size ? size : size_for_epsilon(param), seed};
      summarize([&] {
        return algo == Algorithm::kUniform ? uniform_sample(set, spec)
                                           : sensitivity_sample_sum(set, spec);
      });
      break;
    }
    case Algorithm::kStream:
      if (by_size) throw InvalidInput("stream takes an epsilon grid");
      summarize([&] { return stream_coreset(set, param, config.chunk_size); });
      break;
    case Algorithm::kOurSvdSlow:
    case Algorithm::kOurSvdFast: {
      if (by_size) throw InvalidInput("our-svd takes an epsilon grid");
      const Mode mode = algo == Algorithm::kOurSvdSlow ? Mode::kSlow : Mode::kFast;
      reduce_rows([&] { return dim_coreset(data, config.k, param, mode).weights; });
      break;
    }
    case Algorithm::kSensSvd: {
      const std::size_t picks =
          by_size ? size
                  : static_cast<std::size_t>(dim_coreset_size_bound(config.k, param));
      reduce_rows([&] {
        return sensitivity_sample_svd(data, config.k, SampleSpec{picks, seed})
            .to_dense(data.rows());
      });
      break;
    }
  }
  return cell;
}

void validate(const ExperimentConfig& config) {
  if (config.algorithms.empty()) throw InvalidInput("no algorithm selected");
  if (config.epsilons.empty() == config.sizes.empty())
    throw InvalidInput("give exactly one of an epsilon grid or a size grid");
  if (config.trials < 1) throw InvalidInput("trials must be at least 1");
  for (double e : config.epsilons)
    if (!(e > 0.0 && e < 1.0)) throw InvalidInput("epsilon values must lie in (0, 1)");
  for (std::size_t s : config.sizes)
    if (s == 0) throw InvalidInput("sizes must be positive");
}

}  // namespace

DenseMatrix parse_csv(std::string_view text, bool has_header) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool header_pending = has_header;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (trim(line).empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto fields = split(line, ',');
    if (rows == 0) {
      cols = fields.size();
    } else if (fields.size() != cols) {
      throw RaggedRows(line_no, cols, fields.size());
    }
    for (std::size_t j = 0; j < fields.size(); ++j) {
      double v = 0.0;
      if (!parse_number(fields[j], v))
        throw ParseError(line_no, j + 1, "not a finite number: '" + std::string(fields[j]) + "'");
      values.push_back(v);
    }
    ++rows;
    if (end == text.size()) break;
  }
  if (rows == 0) throw InvalidInput("CSV contains no data rows");
  return DenseMatrix(rows, cols, std::move(values));
}

DenseMatrix load_csv(const std::string& path, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), has_header);
}

SyntheticSpec parse_synthetic(std::string_view text) {
  SyntheticSpec spec;
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  if (kind == "gaussian") {
    spec.kind = SyntheticKind::kGaussian;
  } else if (kind == "heavy-tail") {
    spec.kind = SyntheticKind::kHeavyTail;
  } else if (kind == "low-rank+noise") {
    spec.kind = SyntheticKind::kLowRankNoise;
  } else {
    throw InvalidInput("unknown synthetic generator '" + std::string(kind) + "'");
  }
  if (colon == std::string_view::npos) return spec;
  for (std::string_view item : split(text.substr(colon + 1), ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw InvalidInput("synthetic spec: expected key=value");
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    if (key == "n") {
      spec.n = parse_integer<std::size_t>(key, value);
    } else if (key == "d") {
      spec.d = parse_integer<std::size_t>(key, value);
    } else if (key == "seed") {
      spec.seed = parse_integer<std::uint64_t>(key, value);
    } else if (key == "rank") {
      spec.rank = parse_integer<std::size_t>(key, value);
    } else if (key == "noise") {
      if (!parse_number(value, spec.noise) || spec.noise < 0.0)
        throw InvalidInput("synthetic spec: bad value for noise");
    } else {
      throw InvalidInput("synthetic spec: unknown key '" + std::string(key) + "'");
    }
  }
  if (spec.n == 0 || spec.d == 0) throw InvalidInput("synthetic spec needs n, d >= 1");
  if (spec.kind == SyntheticKind::kLowRankNoise && spec.rank == 0)
    throw InvalidInput("synthetic spec needs rank >= 1");
  return spec;
}

DenseMatrix generate(const SyntheticSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  DenseMatrix out(spec.n, spec.d);
  switch (spec.kind) {
    case SyntheticKind::kGaussian:
      for (double& x : out.data()) x = gauss(rng);
      break;
    case SyntheticKind::kHeavyTail: {
      for (double& x : out.data()) x = gauss(rng);
      std::vector<std::size_t> order(spec.n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), rng);
      const std::size_t heavy = std::max<std::size_t>(1, spec.n / 100);
      for (std::size_t t = 0; t < heavy; ++t)
        for (double& x : out.row(order[t])) x *= 100.0;
      break;
    }
    case SyntheticKind::kLowRankNoise: {
      DenseMatrix left(spec.n, spec.rank);
      DenseMatrix right(spec.rank, spec.d);
      for (double& x : left.data()) x = gauss(rng);
      for (double& x : right.data()) x = gauss(rng);
      out = left * right;
      for (double& x : out.data()) x += spec.noise * gauss(rng);
      break;
    }
  }
  return out;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_weights_csv(std::ostream& out, const SparseWeights& u) {
  for (const auto& e : u.entries()) out << e.index << ',' << format_double(e.weight) << '\n';
}

SparseWeights parse_weights_csv(std::string_view text) {
  const DenseMatrix m = parse_csv(text, false);
  if (m.cols() != 2) throw InvalidInput("weights CSV needs two columns");
  std::vector<SparseWeights::Entry> entries;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double idx = m(i, 0);
    if (idx < 0.0 || idx != std::floor(idx)) throw ParseError(i + 1, 1, "index must be integral");
    entries.push_back({static_cast<std::size_t>(idx), m(i, 1)});
  }
  return SparseWeights::from_entries(std::move(entries));
}

double metric_summarization(const WeightedSet& full, const SparseWeights& u) {
  const std::vector<double> mu = weighted_mean(full);
  const double total = u.total();
  if (!(total > 0.0)) throw InvalidInput("weights are all zero");
  std::vector<double> mu_s(full.dim(), 0.0);
  for (const auto& e : u.entries()) {
    auto q = full.point(e.index);
    for (std::size_t j = 0; j < q.size(); ++j) mu_s[j] += (e.weight / total) * q[j];
  }
  double s = 0.0;
  for (std::size_t j = 0; j < mu.size(); ++j) s += (mu[j] - mu_s[j]) * (mu[j] - mu_s[j]);
  return s;
}

double svd_cost(const DenseMatrix& a, const DenseMatrix& v) {
  const DenseMatrix av = a * v;
  return squared_norm(a.data()) - squared_norm(av.data());
}

double metric_svd(const DenseMatrix& a, std::size_t k, std::span<const double> row_weights) {
  const std::size_t d = a.cols();
  if (k < 1 || k >= d) throw InvalidInput("metric_svd needs 1 <= k < d");
  if (row_weights.size() != a.rows()) throw InvalidInput("row weight length mismatch");

  auto top_k = [k](const DenseMatrix& m) {
    const SvdFactors f = svd(m);
    DenseMatrix v(m.cols(), k);
    for (std::size_t i = 0; i < m.cols(); ++i)
      for (std::size_t j = 0; j < k; ++j) v(i, j) = f.V(i, j);
    return v;
  };

  DenseMatrix weighted = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (row_weights[i] < 0.0) throw InvalidInput("row weights must be nonnegative");
    const double s = std::sqrt(row_weights[i]);
    for (double& x : weighted.row(i)) x *= s;
  }
  const double c_star = svd_cost(a, top_k(a));
  const double c_prime = svd_cost(a, top_k(weighted));
  const double zero = 1e-12 * squared_norm(a.data());
  if (c_star <= zero) {
    if (c_prime <= zero) return 0.0;
    throw ExactRankCase();
  }
  return std::abs((c_star - c_prime) / c_star);
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kSlow, Algorithm::kFast, Algorithm::kProb, Algorithm::kUniform,
                      Algorithm::kSensSum, Algorithm::kOurSvdSlow, Algorithm::kOurSvdFast,
                      Algorithm::kSensSvd, Algorithm::kStream}) {
    if (algorithm_name(a) == name) return a;
  }
  throw InvalidInput("unknown algorithm '" + std::string(name) + "'");
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kSlow: return "slow";
    case Algorithm::kFast: return "fast";
    case Algorithm::kProb: return "prob";
    case Algorithm::kUniform: return "uniform";
    case Algorithm::kSensSum: return "sens-sum";
    case Algorithm::kOurSvdSlow: return "our-svd-slow";
    case Algorithm::kOurSvdFast: return "our-svd-fast";
    case Algorithm::kSensSvd: return "sens-svd";
    case Algorithm::kStream: return "stream";
  }
  return "?";
}

bool is_svd_algorithm(Algorithm a) {
  return a == Algorithm::kOurSvdSlow || a == Algorithm::kOurSvdFast || a == Algorithm::kSensSvd;
}

DenseMatrix load_dataset(const ExperimentConfig& config) {
  validate(config);
  if (config.synthetic) return generate(*config.synthetic);
  if (config.input_path.empty()) throw InvalidInput("no input path or synthetic spec");
  return load_csv(config.input_path, config.has_header);
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const DenseMatrix data = load_dataset(config);
  return run_experiment(config, data);
}

ExperimentReport run_experiment(const ExperimentConfig& config, const DenseMatrix& data) {
  validate(config);
  const WeightedSet set = WeightedSet::uniform(data);
  const bool by_size = !config.sizes.empty();
  std::vector<double> params;
  if (by_size) {
    for (std::size_t s : config.sizes) params.push_back(static_cast<double>(s));
  } else {
    params = config.epsilons;
  }

  ExperimentReport report;
  for (Algorithm algo : config.algorithms) {
    for (double param : params) {
      for (std::size_t trial = 0; trial < config.trials; ++trial) {
        ExperimentRow row;
        row.algorithm = std::string(algorithm_name(algo));
        row.n = data.rows();
        row.d = data.cols();
        row.param_kind = by_size ? "size" : "eps";
        row.param = param;
        row.seed = config.seed + trial;
        row.trial = trial;
        try {
          const CellResult cell = run_cell(algo, data, set, config, by_size, param, row.seed);
          row.coreset_size = cell.coreset_size;
          row.error = cell.error;
          row.time_ms = cell.time_ms;
        } catch (const std::exception& e) {
          row.status = e.what();
          row.error = std::nan("");
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

void write_report_csv(std::ostream& out, const ExperimentReport& report, bool include_timing) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  out << "algorithm,n,d,param_kind,param,coreset_size,error,";
  if (include_timing) out << "time_ms,";
  out << "seed,trial,status\n";
  for (const auto& r : report.rows) {
    out << r.algorithm << ',' << r.n << ',' << r.d << ',' << r.param_kind << ','
        << format_double(r.param) << ',' << r.coreset_size << ',' << format_double(r.error) << ',';
    if (include_timing) out << format_double(r.time_ms) << ',';
    out << r.seed << ',' << r.trial << ',' << quote(r.status) << '\n';
  }
}

void write_report_json(std::ostream& out, const ExperimentReport& report, bool include_timing) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["algorithm"] = r.algorithm;
    row["n"] = r.n;
    row["d"] = r.d;
    row["param_kind"] = r.param_kind;
    row["param"] = r.param;
    row["coreset_size"] = r.coreset_size;
    row["error"] = std::isfinite(r.error) ? nlohmann::ordered_json(r.error) : nullptr;
    if (include_timing) row["time_ms"] = r.time_ms;
    row["seed"] = r.seed;
    row["trial"] = r.trial;
    row["status"] = r.status;
    rows.push_back(std::move(row));
  }
  out << rows.dump(2) << '\n';
}

}  // namespace avgcoreset
