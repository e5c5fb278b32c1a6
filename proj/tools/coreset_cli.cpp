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

// coreset_cli: build coresets and run benchmark grids from the command line.
//
//   coreset_cli summarize --synthetic gaussian:n=10000,d=5,seed=1 --eps 0.1
//   coreset_cli svd --input data.csv --has-header --k 3 --eps 0.3 --out w.csv
//   coreset_cli bench --synthetic heavy-tail:n=5000,d=10 --algo slow,uniform \
//       --sizes 50,150 --trials 20 --format json
//
// Exit codes: 0 ok, 2 parse or configuration error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "avgcoreset/apps.hpp"
#include "avgcoreset/baselines.hpp"
#include "avgcoreset/coresets.hpp"
#include "avgcoreset/errors.hpp"
#include "avgcoreset/harness.hpp"
#include "avgcoreset/streaming.hpp"

namespace ac = avgcoreset;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string input;
  std::string synthetic;
  bool has_header = false;
  std::vector<double> eps;
  std::vector<std::size_t> sizes;
  std::vector<std::string> algos;
  std::size_t k = 1;
  double delta = 0.1;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::size_t chunk_size = 1000;
  std::string out;
  std::string format = "csv";
  bool no_timing = false;
};

void add_data_flags(CLI::App* cmd, Options& o) {
  auto* in = cmd->add_option("--input", o.input, "CSV file of points, one row per point");
  auto* syn = cmd->add_option("--synthetic", o.synthetic,
                              "generator spec, e.g. gaussian:n=1000,d=10,seed=1");
  in->excludes(syn);
  cmd->add_flag("--has-header", o.has_header, "skip the first CSV line");
  cmd->add_option("--out", o.out, "output path (default stdout)");
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

ac::DenseMatrix load(const Options& o) {
  if (!o.synthetic.empty()) return ac::generate(ac::parse_synthetic(o.synthetic));
  if (o.input.empty()) throw ac::InvalidInput("one of --input or --synthetic is required");
  return ac::load_csv(o.input, o.has_header);
}

double single_eps(const Options& o) {
  if (o.eps.size() != 1) throw ac::InvalidInput("--eps takes exactly one value here");
  return o.eps.front();
}

std::optional<std::size_t> single_size(const Options& o) {
  if (o.sizes.empty()) return std::nullopt;
  if (o.sizes.size() != 1) throw ac::InvalidInput("--sizes takes exactly one value here");
  return o.sizes.front();
}

std::string single_algo(const Options& o, const std::string& fallback) {
  if (o.algos.empty()) return fallback;
  if (o.algos.size() != 1) throw ac::InvalidInput("--algo takes exactly one name here");
  return o.algos.front();
}

struct Output {
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw ac::InvalidInput("cannot write " + path);
    }
  }
  std::ostream& stream() { return file.is_open() ? file : std::cout; }
  std::ofstream file;
};

void emit_weights(const Options& o, const ac::SparseWeights& u, std::size_t n, std::size_t d,
                  const std::string& algo, std::optional<double> error) {
  Output out(o.out);
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["algorithm"] = algo;
    j["n"] = n;
    j["d"] = d;
    j["coreset_size"] = u.nnz();
    if (error) j["error"] = *error;
    auto& w = j["weights"] = nlohmann::ordered_json::array();
    for (const auto& e : u.entries()) w.push_back({{"index", e.index}, {"weight", e.weight}});
    out.stream() << j.dump(2) << '\n';
  } else {
    ac::write_weights_csv(out.stream(), u);
  }
  std::cerr << algo << ": n=" << n << " d=" << d << " coreset_size=" << u.nnz();
  if (error) std::cerr << " error=" << ac::format_double(*error);
  std::cerr << '\n';
}

void run_summarize(const Options& o) {
  const ac::DenseMatrix data = load(o);
  const ac::WeightedSet set = ac::WeightedSet::uniform(data);
  const std::string name = single_algo(o, "slow");
  const ac::Algorithm algo = ac::parse_algorithm(name);
  const auto size = single_size(o);
  if (!size && o.eps.empty()) throw ac::InvalidInput("give --eps or --sizes");
  ac::SparseWeights u;
  switch (algo) {
    case ac::Algorithm::kSlow:
    case ac::Algorithm::kFast: {
      const ac::Mode mode = algo == ac::Algorithm::kSlow ? ac::Mode::kSlow : ac::Mode::kFast;
      u = size ? ac::coreset_of_size(set, *size, mode) : ac::coreset(set, single_eps(o), mode);
      break;
    }
    case ac::Algorithm::kProb: {
      const double eps = size ? 4.0 / static_cast<double>(*size) : single_eps(o);
      u = ac::prob_coreset_weights(ac::prob_coreset(data, eps, o.delta, o.seed),
                                   set.total_weight());
      break;
    }
    case ac::Algorithm::kUniform:
    case ac::Algorithm::kSensSum: {
      if (!size) throw ac::InvalidInput(name + " needs --sizes");
      const ac::SampleSpec spec{*size, o.seed};
      u = algo == ac::Algorithm::kUniform ? ac::uniform_sample(set, spec)
                                          : ac::sensitivity_sample_sum(set, spec);
      break;
    }
    default:
      throw ac::InvalidInput("summarize does not support --algo " + name);
  }
  emit_weights(o, u, data.rows(), data.cols(), name, ac::summarization_error(set, u));
}

void run_one_mean(const Options& o) {
  const ac::DenseMatrix data = load(o);
  const ac::WeightedSet set = ac::WeightedSet::uniform(data);
  const std::string name = single_algo(o, "slow");
  const ac::Algorithm algo = ac::parse_algorithm(name);
  if (algo != ac::Algorithm::kSlow && algo != ac::Algorithm::kFast)
    throw ac::InvalidInput("one-mean supports --algo slow or fast");
  const ac::SparseWeights u = ac::one_mean_coreset(
      set, single_eps(o), algo == ac::Algorithm::kSlow ? ac::Mode::kSlow : ac::Mode::kFast);
  emit_weights(o, u, data.rows(), data.cols(), "one-mean-" + name,
               ac::one_mean_certificates(set, u).worst());
}

void run_svd(const Options& o) {
  const ac::DenseMatrix data = load(o);
  const std::string name = single_algo(o, "our-svd-slow");
  const ac::Algorithm algo = ac::parse_algorithm(name);
  std::vector<double> w;
  if (algo == ac::Algorithm::kOurSvdSlow || algo == ac::Algorithm::kOurSvdFast) {
    const ac::Mode mode = algo == ac::Algorithm::kOurSvdSlow ? ac::Mode::kSlow : ac::Mode::kFast;
    w = ac::dim_coreset(data, o.k, single_eps(o), mode).weights;
  } else if (algo == ac::Algorithm::kSensSvd) {
    const auto size = single_size(o);
    if (!size) throw ac::InvalidInput("sens-svd needs --sizes");
    w = ac::sensitivity_sample_svd(data, o.k, ac::SampleSpec{*size, o.seed}).to_dense(data.rows());
  } else {
    throw ac::InvalidInput("svd supports --algo our-svd-slow, our-svd-fast or sens-svd");
  }
  std::optional<double> error;
  if (o.k < data.cols()) error = ac::metric_svd(data, o.k, w);
  emit_weights(o, ac::SparseWeights::from_dense(w), data.rows(), data.cols(), name, error);
}

void run_stream(const Options& o) {
  const ac::DenseMatrix data = load(o);
  const ac::WeightedSet set = ac::WeightedSet::uniform(data);
  const ac::SparseWeights u = ac::stream_coreset(set, single_eps(o), o.chunk_size);
  emit_weights(o, u, data.rows(), data.cols(), "stream", ac::summarization_error(set, u));
}

void run_bench(const Options& o) {
  ac::ExperimentConfig config;
  for (const auto& a : o.algos) config.algorithms.push_back(ac::parse_algorithm(a));
  if (config.algorithms.empty()) config.algorithms.push_back(ac::Algorithm::kSlow);
  config.input_path = o.input;
  config.has_header = o.has_header;
  if (!o.synthetic.empty()) config.synthetic = ac::parse_synthetic(o.synthetic);
  config.epsilons = o.eps;
  config.sizes = o.sizes;
  config.trials = o.trials;
  config.delta = o.delta;
  config.k = o.k;
  config.seed = o.seed;
  config.chunk_size = o.chunk_size;
  const ac::ExperimentReport report = ac::run_experiment(config);
  Output out(o.out);
  if (o.format == "json") {
    ac::write_report_json(out.stream(), report, !o.no_timing);
  } else {
    ac::write_report_csv(out.stream(), report, !o.no_timing);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Average-query coresets: vector summarization, 1-mean, k-SVD and benchmarks"};
  app.require_subcommand(1);
  Options o;

  auto* summarize = app.add_subcommand("summarize", "vector-summarization coreset, weights out");
  auto* one_mean = app.add_subcommand("one-mean", "1-mean coreset, weights out");
  auto* svd = app.add_subcommand("svd", "k-SVD row-weight coreset, weights out");
  auto* stream = app.add_subcommand("stream", "merge-and-reduce summarization, weights out");
  auto* bench = app.add_subcommand("bench", "experiment grid, report out");

  for (auto* cmd : {summarize, one_mean, svd, stream, bench}) {
    add_data_flags(cmd, o);
    cmd->add_option("--eps", o.eps, "epsilon (comma-separated grid for bench)")->delimiter(',');
    cmd->add_option("--seed", o.seed, "random seed");
  }
  for (auto* cmd : {summarize, svd, bench}) {
    cmd->add_option("--sizes", o.sizes, "coreset size (comma-separated grid for bench)")
        ->delimiter(',');
  }
  for (auto* cmd : {summarize, one_mean, svd, bench}) {
    cmd->add_option("--algo", o.algos,
                    "slow|fast|prob|uniform|sens-sum|our-svd-slow|our-svd-fast|sens-svd|stream")
        ->delimiter(',');
  }
  for (auto* cmd : {summarize, bench}) cmd->add_option("--delta", o.delta, "failure probability");
  for (auto* cmd : {svd, bench}) cmd->add_option("--k", o.k, "subspace dimension");
  for (auto* cmd : {stream, bench})
    cmd->add_option("--chunk-size", o.chunk_size, "points per stream chunk");
  bench->add_option("--trials", o.trials, "trials per grid cell");
  bench->add_flag("--no-timing", o.no_timing, "omit time_ms for reproducible output");
  for (auto* cmd : {one_mean, stream}) cmd->get_option("--eps")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*summarize) run_summarize(o);
    if (*one_mean) run_one_mean(o);
    if (*svd) run_svd(o);
    if (*stream) run_stream(o);
    if (*bench) run_bench(o);
  } catch (const ac::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ac::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}
