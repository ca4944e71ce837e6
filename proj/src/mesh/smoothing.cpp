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

#include "gripforge/mesh/smoothing.hpp"

#include <algorithm>
#include <vector>

#include "gripforge/core/error.hpp"

namespace gripforge {

namespace {

std::vector<std::vector<int>> vertex_rings(const TriangleMesh& mesh) {
  std::vector<std::vector<int>> ring(mesh.num_vertices());
  const auto& F = mesh.faces();
  for (int f = 0; f < mesh.num_faces(); ++f)
    for (int k = 0; k < 3; ++k) {
      ring[F(f, k)].push_back(F(f, (k + 1) % 3));
      ring[F(f, k)].push_back(F(f, (k + 2) % 3));
    }
  for (auto& r : ring) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }
  return ring;
}

void umbrella_step(TriangleMesh::VertexMatrix& v, const std::vector<std::vector<int>>& ring,
                   double factor) {
  TriangleMesh::VertexMatrix next = v;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (ring[i].empty()) continue;
    Eigen::RowVector3d mean = Eigen::RowVector3d::Zero();
    for (int j : ring[i]) mean += v.row(j);
    mean /= static_cast<double>(ring[i].size());
    next.row(i) = v.row(i) + factor * (mean - v.row(i));
  }
  v.swap(next);
}

}  // namespace

TriangleMesh smooth_mesh(const TriangleMesh& mesh, int iterations, double strength) {
  if (iterations < 0) throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 0");
  if (!(strength > 0 && strength < 1))
    throw Error(ErrorCode::kInvalidArgument, "smoothing strength must lie in (0, 1)");
  if (iterations == 0) return mesh;
  const double lambda = strength;
  const double mu = -(strength + 0.03);
  const auto ring = vertex_rings(mesh);
  TriangleMesh::VertexMatrix v = mesh.vertices();
  for (int it = 0; it < iterations; ++it) {
    umbrella_step(v, ring, lambda);
    umbrella_step(v, ring, mu);
  }
  return mesh.with_vertices(std::move(v));
}

}  // namespace gripforge
