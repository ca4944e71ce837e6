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

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

namespace gripforge {

struct GaussianMixture {
  std::vector<double> means;
  std::vector<double> variances;
  std::vector<double> weights;

  int k() const { return static_cast<int>(means.size()); }
};

/// EM-fitted 1D mixture and per-sample membership probabilities.
struct SoftClustering {
  GaussianMixture mixture;
  Eigen::MatrixXd responsibilities;         // samples x k
  std::vector<double> log_likelihood_trace;  // one entry per EM iteration
  double log_likelihood = 0;
  double bic = 0;

  int k() const { return mixture.k(); }
};

struct GmmParams {
  int max_iters = 200;
  int restarts = 5;
  double tolerance = 1e-10;  // relative log-likelihood change
};

/// EM with k-means++ initialisation; the best of `restarts` runs is kept.
/// Throws Error(kInvalidArgument) when k < 1 or there are fewer than k
/// distinct values.
SoftClustering soft_cluster(std::span<const double> values, int k, std::uint64_t seed,
                            const GmmParams& params = {});

/// Fits every k in `candidates` admissible for the data and keeps the one
/// with minimum Bayesian information criterion.
SoftClustering soft_cluster_bic(std::span<const double> values, std::span<const int> candidates,
                                std::uint64_t seed, const GmmParams& params = {});

/// Log-likelihood of `values` under `mixture`.
double mixture_log_likelihood(const GaussianMixture& mixture, std::span<const double> values);

}  // namespace gripforge
