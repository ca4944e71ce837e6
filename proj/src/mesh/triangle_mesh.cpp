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

#include "gripforge/mesh/triangle_mesh.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <unordered_map>

#include "gripforge/core/error.hpp"

namespace gripforge {

TriangleMesh::TriangleMesh(VertexMatrix vertices, FaceMatrix faces)
    : vertices_(std::move(vertices)), faces_(std::move(faces)) {
  if (faces_.rows() == 0) throw Error(ErrorCode::kEmptyMesh, "mesh has no faces");
  if (!vertices_.allFinite())
    throw Error(ErrorCode::kMalformedGeometry, "non-finite vertex coordinate");
  const int nv = num_vertices();
  for (int f = 0; f < num_faces(); ++f) {
    for (int k = 0; k < 3; ++k) {
      if (faces_(f, k) < 0 || faces_(f, k) >= nv)
        throw Error(ErrorCode::kMalformedGeometry,
                    "face " + std::to_string(f) + " references vertex " +
                        std::to_string(faces_(f, k)) + " of " + std::to_string(nv));
    }
    if (faces_(f, 0) == faces_(f, 1) || faces_(f, 1) == faces_(f, 2) ||
        faces_(f, 0) == faces_(f, 2))
      throw Error(ErrorCode::kMalformedGeometry,
                  "face " + std::to_string(f) + " repeats a vertex");
  }
  derive();
}

void TriangleMesh::derive() {
  const int nf = num_faces();
  normals_.resize(nf, 3);
  areas_.resize(nf);
  for (int f = 0; f < nf; ++f) {
    const Vec3 n = (corner(f, 1) - corner(f, 0)).cross(corner(f, 2) - corner(f, 0));
    const double a = 0.5 * n.norm();
    if (!(a > kMinFaceArea))
      throw Error(ErrorCode::kMalformedGeometry,
                  "face " + std::to_string(f) + " has area " + std::to_string(a));
    areas_[f] = a;
    normals_.row(f) = (n / (2.0 * a)).transpose();
  }

  bounds_ = AlignedBox<double>{};
  for (int v = 0; v < num_vertices(); ++v) bounds_.extend(vertex(v));

  // Undirected edge -> incident faces.
  std::unordered_map<std::uint64_t, std::vector<int>> edge_faces;
  edge_faces.reserve(static_cast<std::size_t>(nf) * 2);
  auto key = [](int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  };
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < 3; ++k) edge_faces[key(faces_(f, k), faces_(f, (k + 1) % 3))].push_back(f);

  face_edges_.clear();
  for (const auto& [k, fs] : edge_faces) {
    const int a = static_cast<int>(k >> 32);
    const int b = static_cast<int>(k & 0xffffffffu);
    const double len = (vertex(a) - vertex(b)).norm();
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = i + 1; j < fs.size(); ++j) {
        if (fs[i] == fs[j]) continue;
        FaceEdge e;
        e.f = std::min(fs[i], fs[j]);
        e.g = std::max(fs[i], fs[j]);
        e.v0 = a;
        e.v1 = b;
        e.length = len;
        face_edges_.push_back(e);
      }
  }
  std::sort(face_edges_.begin(), face_edges_.end(), [](const FaceEdge& x, const FaceEdge& y) {
    return std::tie(x.f, x.g, x.v0, x.v1) < std::tie(y.f, y.g, y.v0, y.v1);
  });

  face_neighbors_.assign(nf, {});
  for (const auto& e : face_edges_) {
    face_neighbors_[e.f].push_back(e.g);
    face_neighbors_[e.g].push_back(e.f);
  }
  for (auto& n : face_neighbors_) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
}

double TriangleMesh::total_area() const {
  return std::accumulate(areas_.begin(), areas_.end(), 0.0);
}

TriangleMesh TriangleMesh::transformed(const Rigid& t) const {
  VertexMatrix v(vertices_.rows(), 3);
  for (int i = 0; i < num_vertices(); ++i) v.row(i) = (t * vertex(i)).transpose();
  return TriangleMesh(std::move(v), faces_);
}

TriangleMesh TriangleMesh::scaled(double s) const { return TriangleMesh(vertices_ * s, faces_); }

TriangleMesh TriangleMesh::with_vertices(VertexMatrix vertices) const {
  if (vertices.rows() != vertices_.rows())
    throw Error(ErrorCode::kInvalidArgument, "vertex count mismatch");
  return TriangleMesh(std::move(vertices), faces_);
}

Submesh TriangleMesh::extract(std::span<const int> face_ids) const {
  Submesh out;
  std::vector<int> remap(num_vertices(), -1);
  FaceMatrix f(face_ids.size(), 3);
  for (std::size_t i = 0; i < face_ids.size(); ++i) {
    const int src = face_ids[i];
    for (int k = 0; k < 3; ++k) {
      int& r = remap[faces_(src, k)];
      if (r < 0) {
        r = static_cast<int>(out.parent_vertex.size());
        out.parent_vertex.push_back(faces_(src, k));
      }
      f(i, k) = r;
    }
    out.parent_face.push_back(src);
  }
  VertexMatrix v(out.parent_vertex.size(), 3);
  for (std::size_t i = 0; i < out.parent_vertex.size(); ++i)
    v.row(i) = vertices_.row(out.parent_vertex[i]);
  out.mesh = TriangleMesh(std::move(v), std::move(f));
  return out;
}

TriangleMesh TriangleMesh::merge(std::span<const TriangleMesh> parts) {
  Eigen::Index nv = 0, nf = 0;
  for (const auto& p : parts) {
    nv += p.vertices().rows();
    nf += p.faces().rows();
  }
  VertexMatrix v(nv, 3);
  FaceMatrix f(nf, 3);
  Eigen::Index ov = 0, of = 0;
  for (const auto& p : parts) {
    v.middleRows(ov, p.vertices().rows()) = p.vertices();
    f.middleRows(of, p.faces().rows()) = p.faces().array() + static_cast<int>(ov);
    ov += p.vertices().rows();
    of += p.faces().rows();
  }
  return TriangleMesh(std::move(v), std::move(f));
}

}  // namespace gripforge
