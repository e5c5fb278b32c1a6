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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "avgcoreset/apps.hpp"
#include "avgcoreset/baselines.hpp"
#include "avgcoreset/coresets.hpp"
#include "avgcoreset/errors.hpp"
#include "avgcoreset/frank_wolfe.hpp"
#include "avgcoreset/harness.hpp"
#include "avgcoreset/linalg.hpp"
#include "avgcoreset/streaming.hpp"
#include "random_data.hpp"

namespace ac = avgcoreset;
using ac::testing::gaussian_matrix;
using ac::testing::simplex_weights;
using ac::testing::unit_ball_points;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
  Outcome o;
  const auto start = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s [%2d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
              seconds_since(start));
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// ---------------------------------------------------------------------------

constexpr int kFwInstances = 50;

Outcome fw_bound() {
  double worst_ratio = 0.0, slowest = 0.0;
  bool ok = true;
  for (int s = 0; s < kFwInstances; ++s) {
    const auto a = unit_ball_points(1000, 10, 1000 + s);
    const auto w = simplex_weights(1000, 2000 + s);
    ac::MatrixSource src(a);
    for (double eps : {0.5, 0.1, 0.02}) {
      const auto start = Clock::now();
      const std::size_t k = ac::fw_iterations_for(eps);
      const auto r = ac::fw_solve(ac::FwProblem(src, w, k));
      const double t = seconds_since(start);
      slowest = std::max(slowest, t);
      worst_ratio = std::max(worst_ratio, r.squared_residual / eps);
      ok &= r.squared_residual <= eps;
      ok &= r.weights.nnz() <= static_cast<std::size_t>(std::ceil(8.0 / eps - 1e-9)) + 1;
      ok &= t < 1.0;
    }
  }
  return {ok, fmt("max residual/eps %.3g, slowest run %.3f s", worst_ratio, slowest)};
}

Outcome fw_rate() {
  const std::vector<std::size_t> checkpoints{8, 16, 80};
  double worst = 0.0;
  bool ok = true;
  for (int s = 0; s < kFwInstances; ++s) {
    const auto a = unit_ball_points(1000, 10, 1000 + s);
    const auto w = simplex_weights(1000, 2000 + s);
    ac::MatrixSource src(a);
    std::vector<double> at(81, -1.0);
    ac::fw_solve(ac::FwProblem(src, w, 80),
                 [&](const ac::FwState& st) { at[st.iteration] = st.squared_residual(); });
    // A run that stops at the optimum keeps its last residual.
    for (std::size_t i = 1; i <= 80; ++i)
      if (at[i] < 0.0) at[i] = at[i - 1];
    for (std::size_t k : checkpoints) {
      const double bound = 8.0 / (static_cast<double>(k) + 3.0);
      worst = std::max(worst, at[k] / bound);
      ok &= at[k] <= bound;
    }
  }
  return {ok, fmt("max residual/(8/(k+3)) over k in {8,16,80}: %.3g", worst)};
}

// Summarization error of every support subset with the input weights restricted
// to it, recomputed directly and by the library.
bool certificate_enumeration(double& max_gap) {
  for (int s = 0; s < 20; ++s) {
    const auto set = ac::testing::random_weighted_set(6, 2, 500 + s);
    for (unsigned mask = 1; mask < 64; ++mask) {
      std::vector<ac::SparseWeights::Entry> e;
      for (std::size_t i = 0; i < 6; ++i)
        if (mask & (1u << i)) e.push_back({i, set.weights()[i]});
      const auto u = ac::SparseWeights::from_entries(e);
      const double lib = ac::summarization_error(set, u);
      const double direct = ac::testing::direct_summarization_error(set, u);
      max_gap = std::max(max_gap, std::abs(lib - direct) / std::max(1.0, direct));
    }
    const auto u = ac::coreset(set, 0.2);
    if (ac::testing::direct_summarization_error(set, u) > 0.2) return false;
  }
  return max_gap <= 1e-12;
}

Outcome deterministic_coreset() {
  bool ok = true;
  double worst = 0.0;
  std::size_t max_nnz[2] = {0, 0};
  for (int s = 0; s < 50; ++s) {
    const auto set = ac::testing::random_weighted_set(2000, 20, 3000 + s);
    int idx = 0;
    for (double eps : {0.2, 0.05}) {
      const auto u = ac::coreset(set, eps);
      const double err = ac::summarization_error(set, u);
      worst = std::max(worst, err / eps);
      max_nnz[idx] = std::max(max_nnz[idx], u.nnz());
      ok &= err <= eps;
      ok &= static_cast<double>(u.nnz()) <= 128.0 / eps;
      ++idx;
    }
  }
  double gap = 0.0;
  const bool enumeration = certificate_enumeration(gap);
  return {ok && enumeration,
          fmt("max error/eps %.3g, max nnz %zu (eps=0.2) %zu (eps=0.05), enumeration gap %.2g",
              worst, max_nnz[0], max_nnz[1], gap)};
}

Outcome fast_booster() {
  bool ok = true;
  double worst = 0.0;
  std::size_t max_nnz = 0;
  const int instances = 50;
  for (int s = 0; s < instances; ++s) {
    const auto set = ac::testing::random_weighted_set(100000, 20, 3000 + s);
    for (double eps : {0.2, 0.05}) {
      const auto u = ac::coreset(set, eps, ac::Mode::kFast);
      const double err = ac::summarization_error(set, u);
      worst = std::max(worst, err / eps);
      max_nnz = std::max(max_nnz, u.nnz());
      ok &= err <= 2 * eps;
      // The base case runs at lifted epsilon eps / 16: at most 8 / (eps / 16) points.
      ok &= static_cast<double>(u.nnz()) <= 8.0 / (eps / 16.0);
    }
  }
  const auto set = ac::testing::random_weighted_set(100000, 20, 3000);
  std::vector<double> slow_t, fast_t;
  for (int r = 0; r < 5; ++r) {
    auto t0 = Clock::now();
    const auto a = ac::coreset(set, 0.05, ac::Mode::kSlow);
    slow_t.push_back(seconds_since(t0));
    t0 = Clock::now();
    const auto b = ac::coreset(set, 0.05, ac::Mode::kFast);
    fast_t.push_back(seconds_since(t0));
    ok &= a.nnz() > 0 && b.nnz() > 0;
  }
  const double ms = median(slow_t) * 1e3, mf = median(fast_t) * 1e3;
  ok &= mf < ms;
  return {ok, fmt("max error/eps %.3g (bound 2), max nnz %zu, median time fast %.1f ms vs slow %.1f ms",
                  worst, max_nnz, mf, ms)};
}

Outcome prob_coreset() {
  const auto pts = gaussian_matrix(10000, 5, 77);
  const auto set = ac::WeightedSet::uniform(pts);
  const auto mu = ac::weighted_mean(set);
  const double var = ac::weighted_variance(set);
  const double eps = 0.25, delta = 0.1;
  const auto group = static_cast<std::size_t>(std::ceil(4.0 / eps));
  const auto start = Clock::now();
  int success = 0;
  bool sizes_ok = true;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto r = ac::prob_coreset(pts, eps, delta, seed);
    sizes_ok &= r.indices.size() == group;
    std::vector<double> mean(5, 0.0);
    for (auto i : r.indices)
      for (std::size_t j = 0; j < 5; ++j) mean[j] += pts(i, j) / static_cast<double>(group);
    double d2 = 0.0;
    for (std::size_t j = 0; j < 5; ++j) d2 += (mean[j] - mu[j]) * (mean[j] - mu[j]);
    success += d2 <= 33 * eps * var;
  }
  const double t = seconds_since(start);
  const double freq = success / 500.0;
  return {sizes_ok && freq >= 1 - 3 * delta && t < 60.0,
          fmt("|S| = %zu always: %s, success frequency %.3f (need >= 0.70), %.2f s", group,
              sizes_ok ? "yes" : "no", freq, t)};
}

Outcome one_mean() {
  const double eps = 0.2;
  const auto set = ac::testing::random_weighted_set(300, 5, 41);
  const auto u = ac::one_mean_coreset(set, eps);
  const auto cert = ac::one_mean_certificates(set, u);
  const double eps_in = 2 * (eps / 4);
  bool ok = cert.mean_norm <= eps_in && cert.weight_gap <= eps_in && cert.variance_gap <= eps_in;

  std::mt19937_64 rng(42);
  std::normal_distribution<double> g(0.0, 2.0);
  double worst = 0.0;
  std::vector<std::vector<double>> queries;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x(5);
    for (double& v : x) v = g(rng);
    const double full = ac::one_mean_cost(set, x);
    worst = std::max(worst, std::abs(full - ac::one_mean_cost(set, u, x)) / full);
    queries.push_back(x);
  }
  ok &= worst <= eps;

  // Similarity map y = 3 R q + b with R a random rotation. For the same weights
  // the certificates and every relative cost gap are unchanged up to rounding.
  const auto rot = ac::random_orthogonal(5, 5, 43);
  const std::vector<double> shift{10.0, -4.0, 0.5, 7.0, -2.0};
  auto transform = [&](std::span<const double> q) {
    std::vector<double> y(5, 0.0);
    for (std::size_t r = 0; r < 5; ++r) {
      for (std::size_t c = 0; c < 5; ++c) y[r] += 3.0 * rot(r, c) * q[c];
      y[r] += shift[r];
    }
    return y;
  };
  ac::DenseMatrix moved(300, 5);
  for (std::size_t i = 0; i < 300; ++i) {
    const auto y = transform(set.point(i));
    std::copy(y.begin(), y.end(), moved.row(i).begin());
  }
  const ac::WeightedSet other(moved, {set.weights().begin(), set.weights().end()});
  const auto cert2 = ac::one_mean_certificates(other, u);
  auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(x), 1e-300); };
  double affine = std::max({rel(cert.mean_norm, cert2.mean_norm), rel(cert.weight_gap, cert2.weight_gap),
                            rel(cert.variance_gap, cert2.variance_gap)});
  for (const auto& x : queries) {
    const auto y = transform(x);
    const double g1 = (ac::one_mean_cost(set, u, x) - ac::one_mean_cost(set, x)) / ac::one_mean_cost(set, x);
    const double g2 = (ac::one_mean_cost(other, u, y) - ac::one_mean_cost(other, y)) / ac::one_mean_cost(other, y);
    // g is already relative to the true cost, so compare it directly.
    affine = std::max(affine, std::abs(g1 - g2));
  }
  ok &= affine <= 1e-9;
  return {ok, fmt("certificates %.3g/%.3g/%.3g (<= %.2g), max query gap %.3g, affine deviation %.2g",
                  cert.mean_norm, cert.weight_gap, cert.variance_gap, eps_in, worst, affine)};
}

Outcome dim_reduction() {
  const std::size_t n = 2000, d = 10, k = 3;
  const double eps = 0.3;
  const auto a = ac::generate(ac::parse_synthetic("low-rank+noise:n=2000,d=10,rank=3,noise=0.1,seed=7"));
  const auto r = ac::dim_coreset(a, k, eps);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  double max_dev = 0.0, max_ratio = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto x = ac::random_orthogonal(d, d - k, 900 + t);
    std::vector<double> offset(d);
    for (double& v : offset) v = g(rng);
    const double ratio = ac::subspace_cost(a, r.weights, offset, x) / ac::subspace_cost(a, {}, offset, x);
    max_dev = std::max(max_dev, std::abs(1.0 - ratio));
    max_ratio = std::max(max_ratio, ratio);
  }
  const double bound = ac::dim_coreset_size_bound(k, eps);
  const bool ok = max_dev <= 5 * eps && static_cast<double>(r.nnz) <= bound && r.nnz <= n;
  return {ok, fmt("max |1 - ratio| %.4g (<= %.2g), max ratio %.4g, nnz %zu (bound %.0f)%s",
                  max_dev, 5 * eps, max_ratio, r.nnz, bound, r.exact ? ", exact path" : "")};
}

Outcome kde() {
  const auto pts = gaussian_matrix(2000, 3, 51);
  const double eps = 0.2;
  const bool identity =
      ac::kde_coreset(pts, ac::IdentityMap(3), eps) == ac::coreset(ac::WeightedSet::uniform(pts), eps * eps);

  const ac::RandomFourierMap map(3, 256, 1.0, 52);
  const auto mapped = ac::map_points(pts, map);
  const auto u = ac::kde_coreset(pts, map, eps);
  const auto mapped_set = ac::WeightedSet::uniform(mapped);
  const double mean_err = ac::summarization_error(mapped_set, u);
  const auto mu = ac::mean_embedding(mapped);
  const auto mu_u = ac::mean_embedding(mapped, &u);
  double dist2 = 0.0;
  for (std::size_t j = 0; j < mu.size(); ++j) dist2 += (mu[j] - mu_u[j]) * (mu[j] - mu_u[j]);
  const double dist = std::sqrt(dist2);

  std::mt19937_64 rng(53);
  std::normal_distribution<double> g(0.0, 1.5);
  std::vector<double> probe(3), phi(256);
  double worst = 0.0;
  bool probes_ok = true;
  for (int t = 0; t < 50; ++t) {
    for (double& v : probe) v = g(rng);
    map.apply(probe, phi);
    const double dev = std::abs(ac::dot(phi, mu) - ac::dot(phi, mu_u));
    worst = std::max(worst, dev);
    probes_ok &= dev <= dist * (1 + 1e-12) + 1e-15;
  }
  const bool ok = identity && mean_err <= eps * eps && dist2 <= eps * eps && probes_ok;
  return {ok, fmt("identity bit-exact: %s, mapped error %.3g (<= %.3g), max probe deviation %.3g <= embedding distance %.3g",
                  identity ? "yes" : "no", mean_err, eps * eps, worst, dist)};
}

Outcome svd_kernel() {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<std::size_t> rows(1, 200), cols(1, 32);
  double worst_rec = 0.0, worst_orth = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = rows(rng), d = cols(rng);
    const auto a = gaussian_matrix(n, d, 6000 + t);
    const auto f = ac::svd(a);
    const auto b = ac::reconstruct(f);
    double num = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) num += std::pow(a.data()[i] - b.data()[i], 2);
    worst_rec = std::max(worst_rec, std::sqrt(num / ac::squared_norm(a.data())));
    worst_orth = std::max({worst_orth, ac::orthonormality_error(f.U), ac::orthonormality_error(f.V)});
  }
  return {worst_rec <= 1e-8 && worst_orth <= 1e-10,
          fmt("max relative reconstruction %.3g, max orthonormality %.3g", worst_rec, worst_orth)};
}

Outcome streaming() {
  const std::size_t chunks = 32, len = 1000;
  const double eps = 0.05;
  const auto pts = gaussian_matrix(chunks * len, 5, 71);
  ac::StreamSummary s(eps, len);
  for (std::size_t c = 0; c < chunks; ++c) {
    ac::DenseMatrix chunk(len, 5);
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = 0; j < 5; ++j) chunk(i, j) = pts(c * len + i, j);
    s.insert(ac::WeightedSet::uniform(std::move(chunk)));
  }
  const auto full = ac::WeightedSet::uniform(pts);
  const double err = ac::summarization_error(full, s.finalize());
  const bool ok = err <= 6 * eps && s.max_occupied_levels() <= 6;
  return {ok, fmt("error %.3g (<= 6 x %.2g), max occupied buckets %zu (<= 6), retained %zu points",
                  err, eps, s.max_occupied_levels(), s.retained_points())};
}

Outcome benchmark_sanity() {
  ac::ExperimentConfig c;
  c.algorithms = {ac::Algorithm::kSlow, ac::Algorithm::kUniform};
  c.synthetic = ac::parse_synthetic("heavy-tail:n=20000,d=10,seed=81");
  c.sizes = {150};
  c.trials = 20;
  c.seed = 1;
  const auto report = ac::run_experiment(c);
  double det = 0.0, uni = 0.0, det2 = 0.0, uni2 = 0.0;
  int nd = 0, nu = 0;
  bool status_ok = true;
  for (const auto& r : report.rows) {
    status_ok &= r.status == "ok";
    if (r.algorithm == "slow") {
      det += r.error;
      det2 += r.error * r.error;
      ++nd;
    } else {
      uni += r.error;
      uni2 += r.error * r.error;
      ++nu;
    }
  }
  det /= nd;
  uni /= nu;
  const double sd_det = std::sqrt(std::max(0.0, det2 / nd - det * det));
  const double sd_uni = std::sqrt(std::max(0.0, uni2 / nu - uni * uni));
  return {status_ok && nd == 20 && nu == 20 && det < uni,
          fmt("mean error deterministic %.4g +- %.2g vs uniform %.4g +- %.2g over 20 trials", det,
              sd_det, uni, sd_uni)};
}

}  // namespace

int main() {
  report(1, "Frank-Wolfe bound", fw_bound);
  report(2, "Frank-Wolfe rate", fw_rate);
  report(3, "deterministic coreset", deterministic_coreset);
  report(4, "fast booster", fast_booster);
  report(5, "probabilistic coreset", prob_coreset);
  report(6, "1-mean coreset", one_mean);
  report(7, "dimensionality reduction", dim_reduction);
  report(8, "kernel density", kde);
  report(9, "SVD kernel", svd_kernel);
  report(10, "streaming", streaming);
  report(11, "benchmark sanity", benchmark_sanity);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
