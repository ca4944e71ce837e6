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

#include <vector>

#include "gripforge/mesh/triangle_mesh.hpp"

namespace gripforge {

/// Dinic max-flow / min-cut on a graph with source and sink terminals.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes);

  void add_edge(int u, int v, double cap, double rev_cap = 0);
  /// Capacity from the source to v and from v to the sink.
  void add_terminal(int v, double source_cap, double sink_cap);

  double solve();
  /// After solve(): true if v stays connected to the source in the residual.
  bool source_side(int v) const { return reach_[v] != 0; }

 private:
  struct Arc {
    int to;
    int rev;
    double cap;
  };
  bool bfs();
  double dfs(int v, double pushed);

  int source_, sink_;
  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_, iter_;
  std::vector<char> reach_;
};

struct HardClusterParams {
  double lambda = 4.0;          // smoothness weight
  double data_epsilon = 1e-6;   // inside -log(P + eps)
  double angle_epsilon = 1e-3;  // inside -log(theta / pi + eps)
  int max_sweeps = 10;
};

struct HardClustering {
  std::vector<int> labels;
  std::vector<double> energy_trace;  // initial energy, then one per sweep
};

/// Edge weight -log(dihedral / pi + eps), clamped at 0.
double dihedral_weight(double dihedral, double eps);

/// E = sum_f -log(P(f, l_f) + eps) + lambda * sum_edges w(dihedral) [l_f != l_g].
double labeling_energy(const TriangleMesh& mesh, const Eigen::MatrixXd& probabilities,
                       const std::vector<int>& labels, const HardClusterParams& params);

/// Alpha-expansion starting from the per-face argmax.
HardClustering hard_cluster(const TriangleMesh& mesh, const Eigen::MatrixXd& probabilities,
                            const HardClusterParams& params);

}  // namespace gripforge
