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

#include "gripforge/segmentation/segments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "gripforge/core/error.hpp"
#include "gripforge/mesh/ray_accelerator.hpp"

namespace gripforge {
namespace {

// Union-find over faces.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

SegmentLabeling split_into_segments(const TriangleMesh& mesh, const std::vector<int>& cluster_ids,
                                    double min_fraction) {
  const int nf = mesh.num_faces();
  if (static_cast<int>(cluster_ids.size()) != nf)
    throw Error(ErrorCode::kInvalidArgument, "cluster id count does not match the face count");
  const auto& edges = mesh.face_edges();

  Dsu dsu(nf);
  for (const auto& e : edges)
    if (cluster_ids[e.f] == cluster_ids[e.g]) dsu.unite(e.f, e.g);

  // Component roots are their smallest face.
  std::vector<int> rep(nf);
  std::vector<int> cluster(nf, -1);
  std::vector<int> size(nf, 0);
  for (int f = 0; f < nf; ++f) {
    rep[f] = dsu.find(f);
    ++size[rep[f]];
    cluster[rep[f]] = cluster_ids[f];
  }

  const int min_faces = std::max(1, static_cast<int>(std::ceil(min_fraction * nf)));
  Dsu merged(nf);
  for (;;) {
    // Smallest undersized segment that has a neighbour; ties to lower id.
    std::map<std::pair<int, int>, double> boundary;
    for (const auto& e : edges) {
      const int a = merged.find(rep[e.f]), b = merged.find(rep[e.g]);
      if (a == b) continue;
      boundary[{a, b}] += e.length;
      boundary[{b, a}] += e.length;
    }
    int victim = -1;
    for (const auto& [key, len] : boundary) {
      const int a = key.first;
      if (size[a] >= min_faces) continue;
      if (victim < 0 || size[a] < size[victim] || (size[a] == size[victim] && a < victim)) victim = a;
    }
    if (victim < 0) break;
    int host = -1;
    double best = -1;
    for (auto it = boundary.lower_bound({victim, -1}); it != boundary.end() && it->first.first == victim;
         ++it)
      if (it->second > best) {
        best = it->second;
        host = it->first.second;
      }
    const int c = cluster[host];
    const int total = size[host] + size[victim];
    merged.unite(host, victim);
    const int root = merged.find(host);
    size[root] = total;
    cluster[root] = c;
  }

  SegmentLabeling out;
  out.segment_of_face.assign(nf, -1);
  std::vector<int> id_of(nf, -1);
  for (int f = 0; f < nf; ++f) {
    const int r = merged.find(rep[f]);
    if (id_of[r] < 0) {
      id_of[r] = out.count();
      out.faces.emplace_back();
      out.cluster.push_back(cluster[r]);
    }
    out.segment_of_face[f] = id_of[r];
    out.faces[id_of[r]].push_back(f);
  }
  return out;
}

SegmentationResult segment_mesh(const TriangleMesh& mesh, const SegmentationParams& params) {
  SegmentationResult out;
  const RayAccelerator accel(mesh);
  out.sdf = compute_sdf(mesh, accel, params.sdf);
  out.missing_sdf = out.sdf.missing_count();
  fill_missing_sdf(mesh, out.sdf);
  out.normalized = normalize_sdf(out.sdf);
  if (params.fixed_k > 0) {
    out.soft = soft_cluster(out.normalized, params.fixed_k, params.sdf.seed, params.gmm);
  } else {
    out.soft = soft_cluster_bic(out.normalized, params.k_candidates, params.sdf.seed, params.gmm);
  }
  out.hard = hard_cluster(mesh, out.soft.responsibilities, params.hard);
  out.segments = split_into_segments(mesh, out.hard.labels, params.min_segment_fraction);
  return out;
}

}  // namespace gripforge
