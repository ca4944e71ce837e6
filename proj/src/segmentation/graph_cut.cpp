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

#include "gripforge/segmentation/graph_cut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "gripforge/core/error.hpp"
#include "gripforge/core/geometry.hpp"

namespace gripforge {

MaxFlow::MaxFlow(int nodes)
    : source_(nodes), sink_(nodes + 1), adj_(nodes + 2), level_(nodes + 2), iter_(nodes + 2),
      reach_(nodes + 2, 0) {}

void MaxFlow::add_edge(int u, int v, double cap, double rev_cap) {
  if (cap <= 0 && rev_cap <= 0) return;
  adj_[u].push_back({v, static_cast<int>(adj_[v].size()), cap});
  adj_[v].push_back({u, static_cast<int>(adj_[u].size()) - 1, rev_cap});
}

void MaxFlow::add_terminal(int v, double source_cap, double sink_cap) {
  if (source_cap > 0) add_edge(source_, v, source_cap);
  if (sink_cap > 0) add_edge(v, sink_, sink_cap);
}

bool MaxFlow::bfs() {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> q;
  level_[source_] = 0;
  q.push(source_);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const Arc& a : adj_[v])
      if (a.cap > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        q.push(a.to);
      }
  }
  return level_[sink_] >= 0;
}

double MaxFlow::dfs(int v, double pushed) {
  if (v == sink_) return pushed;
  for (int& i = iter_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
    Arc& a = adj_[v][i];
    if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
    const double d = dfs(a.to, std::min(pushed, a.cap));
    if (d > 0) {
      a.cap -= d;
      adj_[a.to][a.rev].cap += d;
      return d;
    }
  }
  return 0;
}

double MaxFlow::solve() {
  double flow = 0;
  while (bfs()) {
    std::fill(iter_.begin(), iter_.end(), 0);
    while (const double f = dfs(source_, std::numeric_limits<double>::infinity())) flow += f;
  }
  std::fill(reach_.begin(), reach_.end(), 0);
  std::queue<int> q;
  reach_[source_] = 1;
  q.push(source_);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const Arc& a : adj_[v])
      if (a.cap > 0 && !reach_[a.to]) {
        reach_[a.to] = 1;
        q.push(a.to);
      }
  }
  return flow;
}

double dihedral_weight(double dihedral, double eps) {
  return std::max(0.0, -std::log(dihedral / kPi + eps));
}

namespace {

std::vector<double> edge_weights(const TriangleMesh& mesh, double eps) {
  std::vector<double> w;
  w.reserve(mesh.face_edges().size());
  for (const auto& e : mesh.face_edges())
    w.push_back(dihedral_weight(angle_between(mesh.normal(e.f), mesh.normal(e.g)), eps));
  return w;
}

double energy(const Eigen::MatrixXd& cost, const TriangleMesh& mesh, const std::vector<double>& w,
              const std::vector<int>& labels, double lambda) {
  double e = 0;
  for (int f = 0; f < cost.rows(); ++f) e += cost(f, labels[f]);
  const auto& edges = mesh.face_edges();
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (labels[edges[i].f] != labels[edges[i].g]) e += lambda * w[i];
  return e;
}

Eigen::MatrixXd data_costs(const Eigen::MatrixXd& p, double eps) {
  return (p.array() + eps).log().matrix() * -1.0;
}

void check_shape(const TriangleMesh& mesh, const Eigen::MatrixXd& p) {
  if (p.rows() != mesh.num_faces() || p.cols() < 1)
    throw Error(ErrorCode::kInvalidArgument, "probability matrix must have one row per face");
}

}  // namespace

double labeling_energy(const TriangleMesh& mesh, const Eigen::MatrixXd& probabilities,
                       const std::vector<int>& labels, const HardClusterParams& params) {
  check_shape(mesh, probabilities);
  return energy(data_costs(probabilities, params.data_epsilon), mesh,
                edge_weights(mesh, params.angle_epsilon), labels, params.lambda);
}

HardClustering hard_cluster(const TriangleMesh& mesh, const Eigen::MatrixXd& probabilities,
                            const HardClusterParams& params) {
  check_shape(mesh, probabilities);
  if (params.lambda < 0) throw Error(ErrorCode::kInvalidArgument, "smoothness weight must be >= 0");
  const int nf = mesh.num_faces();
  const int k = static_cast<int>(probabilities.cols());
  const Eigen::MatrixXd cost = data_costs(probabilities, params.data_epsilon);
  const std::vector<double> w = edge_weights(mesh, params.angle_epsilon);
  const auto& edges = mesh.face_edges();

  HardClustering out;
  out.labels.resize(nf);
  for (int f = 0; f < nf; ++f) {
    Eigen::Index j;
    probabilities.row(f).maxCoeff(&j);
    out.labels[f] = static_cast<int>(j);
  }
  double current = energy(cost, mesh, w, out.labels, params.lambda);
  out.energy_trace.push_back(current);
  if (params.lambda == 0 || k == 1) return out;

  // x_f = 1 (sink side) switches f to alpha.
  for (int sweep = 0; sweep < params.max_sweeps; ++sweep) {
    bool improved = false;
    for (int alpha = 0; alpha < k; ++alpha) {
      MaxFlow g(nf);
      std::vector<double> unary(nf, 0.0);
      for (int f = 0; f < nf; ++f) unary[f] = cost(f, alpha) - cost(f, out.labels[f]);
      for (std::size_t i = 0; i < edges.size(); ++i) {
        const int f = edges[i].f, h = edges[i].g;
        const int lf = out.labels[f], lh = out.labels[h];
        const double c = params.lambda * w[i];
        const double A = lf != lh ? c : 0;     // keep, keep
        const double B = lf != alpha ? c : 0;  // keep, switch
        const double C = alpha != lh ? c : 0;  // switch, keep
        // D = 0: both alpha.
        unary[f] += C - A;
        unary[h] += 0 - C;
        const double pair = B + C - A;  // >= 0 by the triangle inequality of the Potts metric
        if (pair > 0) g.add_edge(f, h, pair);
      }
      for (int f = 0; f < nf; ++f) {
        if (unary[f] > 0) g.add_terminal(f, unary[f], 0);
        else if (unary[f] < 0) g.add_terminal(f, 0, -unary[f]);
      }
      g.solve();
      std::vector<int> next = out.labels;
      for (int f = 0; f < nf; ++f)
        if (!g.source_side(f)) next[f] = alpha;
      const double e = energy(cost, mesh, w, next, params.lambda);
      if (e < current - 1e-12 * std::max(1.0, std::abs(current))) {
        out.labels = std::move(next);
        current = e;
        improved = true;
      }
    }
    out.energy_trace.push_back(current);
    if (!improved) break;
  }
  return out;
}

}  // namespace gripforge
