// Copyright 2026 The Gripforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gripforge/segmentation/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "gripforge/core/error.hpp"
#include "gripforge/core/geometry.hpp"
#include "gripforge/core/random.hpp"

namespace gripforge {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_normal(double x, double mean, double var) {
  const double d = x - mean;
  return -0.5 * (std::log(2 * kPi * var) + d * d / var);
}

double log_sum_exp(const double* v, int n) {
  double m = kNegInf;
  for (int i = 0; i < n; ++i) m = std::max(m, v[i]);
  if (m == kNegInf) return kNegInf;
  double s = 0;
  for (int i = 0; i < n; ++i) s += std::exp(v[i] - m);
  return m + std::log(s);
}

// E-step; returns the log-likelihood and fills resp.
double expectation(const GaussianMixture& g, std::span<const double> x, Eigen::MatrixXd& resp) {
  const int k = g.k();
  std::vector<double> lp(k);
  double ll = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int j = 0; j < k; ++j)
      lp[j] = g.weights[j] > 0 ? std::log(g.weights[j]) + log_normal(x[i], g.means[j], g.variances[j])
                               : kNegInf;
    const double lse = log_sum_exp(lp.data(), k);
    ll += lse;
    for (int j = 0; j < k; ++j) resp(i, j) = std::exp(lp[j] - lse);
    resp.row(i) /= resp.row(i).sum();
  }
  return ll;
}

void maximization(GaussianMixture& g, std::span<const double> x, const Eigen::MatrixXd& resp,
                  double var_floor) {
  const int k = g.k();
  const double n = static_cast<double>(x.size());
  for (int j = 0; j < k; ++j) {
    double nj = 0, s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      nj += resp(i, j);
      s += resp(i, j) * x[i];
    }
    if (nj <= 0) {
      g.weights[j] = 0;
      continue;
    }
    const double mean = s / nj;
    double v = 0;
    for (std::size_t i = 0; i < x.size(); ++i) v += resp(i, j) * (x[i] - mean) * (x[i] - mean);
    g.means[j] = mean;
    g.variances[j] = std::max(v / nj, var_floor);
    g.weights[j] = nj / n;
  }
  double wsum = 0;
  for (double w : g.weights) wsum += w;
  for (double& w : g.weights) w /= wsum;
}

// k-means++ seeding followed by a few Lloyd iterations.
GaussianMixture initialise(std::span<const double> x, int k, Rng& rng, double var_floor) {
  const std::size_t n = x.size();
  std::vector<double> centers;
  centers.push_back(x[std::min<std::size_t>(n - 1, static_cast<std::size_t>(uniform01(rng) * n))]);
  std::vector<double> d2(n);
  while (static_cast<int>(centers.size()) < k) {
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (double c : centers) best = std::min(best, (x[i] - c) * (x[i] - c));
      d2[i] = best;
      total += best;
    }
    double r = uniform01(rng) * total;
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (d2[i] <= 0) continue;
      pick = i;
      r -= d2[i];
      if (r < 0) break;
    }
    centers.push_back(x[pick]);  // pick < n: caller guarantees k distinct values
  }

  std::vector<int> assign(n, 0);
  for (int iter = 0; iter < 20; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      for (int j = 1; j < k; ++j)
        if (std::abs(x[i] - centers[j]) < std::abs(x[i] - centers[best])) best = j;
      assign[i] = best;
    }
    std::vector<double> sum(k, 0), cnt(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[assign[i]] += x[i];
      cnt[assign[i]] += 1;
    }
    for (int j = 0; j < k; ++j)
      if (cnt[j] > 0) centers[j] = sum[j] / cnt[j];
  }

  GaussianMixture g;
  g.means = centers;
  g.variances.assign(k, 0);
  g.weights.assign(k, 0);
  std::vector<double> cnt(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int j = assign[i];
    g.variances[j] += (x[i] - centers[j]) * (x[i] - centers[j]);
    cnt[j] += 1;
  }
  for (int j = 0; j < k; ++j) {
    g.variances[j] = std::max(cnt[j] > 0 ? g.variances[j] / cnt[j] : var_floor, var_floor);
    g.weights[j] = std::max(cnt[j], 1.0);
  }
  double wsum = 0;
  for (double w : g.weights) wsum += w;
  for (double& w : g.weights) w /= wsum;
  return g;
}

std::size_t distinct_count(std::span<const double> x) {
  return std::set<double>(x.begin(), x.end()).size();
}

}  // namespace

double mixture_log_likelihood(const GaussianMixture& mixture, std::span<const double> values) {
  Eigen::MatrixXd resp(values.size(), mixture.k());
  return expectation(mixture, values, resp);
}

SoftClustering soft_cluster(std::span<const double> values, int k, std::uint64_t seed,
                            const GmmParams& params) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "cluster count must be >= 1");
  if (distinct_count(values) < static_cast<std::size_t>(k))
    throw Error(ErrorCode::kInvalidArgument,
                "cluster count " + std::to_string(k) + " exceeds the number of distinct values");

  const double n = static_cast<double>(values.size());
  double mean = 0;
  for (double v : values) mean += v;
  mean /= n;
  double var = 0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= n;
  const double var_floor = std::max(1e-12, 1e-8 * var);

  SoftClustering best;
  best.log_likelihood = kNegInf;
  for (int r = 0; r < std::max(1, params.restarts); ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    SoftClustering run;
    run.mixture = initialise(values, k, rng, var_floor);
    run.responsibilities.resize(values.size(), k);
    double ll = expectation(run.mixture, values, run.responsibilities);
    run.log_likelihood_trace.push_back(ll);
    for (int it = 0; it < params.max_iters; ++it) {
      maximization(run.mixture, values, run.responsibilities, var_floor);
      const double next = expectation(run.mixture, values, run.responsibilities);
      run.log_likelihood_trace.push_back(next);
      const bool done = next - ll <= params.tolerance * std::max(1.0, std::abs(ll));
      ll = next;
      if (done) break;
    }
    run.log_likelihood = ll;
    if (run.log_likelihood > best.log_likelihood) best = std::move(run);
  }
  const double free_params = 3.0 * k - 1;
  best.bic = free_params * std::log(n) - 2 * best.log_likelihood;
  return best;
}

SoftClustering soft_cluster_bic(std::span<const double> values, std::span<const int> candidates,
                                std::uint64_t seed, const GmmParams& params) {
  const std::size_t distinct = distinct_count(values);
  SoftClustering best;
  bool have = false;
  for (int k : candidates) {
    if (k < 1 || static_cast<std::size_t>(k) > distinct) continue;
    SoftClustering s = soft_cluster(values, k, seed, params);
    if (!have || s.bic < best.bic) {
      best = std::move(s);
      have = true;
    }
  }
  if (!have) best = soft_cluster(values, 1, seed, params);
  return best;
}

}  // namespace gripforge
