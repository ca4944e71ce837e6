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

#include <span>
#include <vector>

#include "gripforge/core/geometry.hpp"

namespace gripforge {

/// Two faces sharing a mesh edge.
struct FaceEdge {
  int f = -1;
  int g = -1;
  int v0 = -1;
  int v1 = -1;
  double length = 0;
};

class TriangleMesh;

/// A face subset extracted as its own mesh, with maps back to the parent.
struct Submesh;

/// Indexed triangle mesh with derived per-face normals, areas and face
/// adjacency. Immutable after construction.
class TriangleMesh {
 public:
  using VertexMatrix = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;
  using FaceMatrix = Eigen::Matrix<int, Eigen::Dynamic, 3, Eigen::RowMajor>;

  /// Smallest admissible face area in mm^2.
  static constexpr double kMinFaceArea = 1e-12;

  TriangleMesh() = default;

  /// Validates indices, finiteness and face areas; throws
  /// Error(kMalformedGeometry) on violation and Error(kEmptyMesh) on no faces.
  TriangleMesh(VertexMatrix vertices, FaceMatrix faces);

  int num_vertices() const { return static_cast<int>(vertices_.rows()); }
  int num_faces() const { return static_cast<int>(faces_.rows()); }

  const VertexMatrix& vertices() const { return vertices_; }
  const FaceMatrix& faces() const { return faces_; }

  Vec3 vertex(int v) const { return vertices_.row(v).transpose(); }
  Vec3 corner(int f, int k) const { return vertices_.row(faces_(f, k)).transpose(); }
  Vec3 normal(int f) const { return normals_.row(f).transpose(); }
  double area(int f) const { return areas_[f]; }
  Vec3 centroid(int f) const { return (corner(f, 0) + corner(f, 1) + corner(f, 2)) / 3.0; }

  /// One entry per pair of faces sharing an edge (f < g).
  const std::vector<FaceEdge>& face_edges() const { return face_edges_; }
  /// Per face, the sorted list of edge-adjacent faces.
  const std::vector<std::vector<int>>& face_neighbors() const { return face_neighbors_; }

  const AlignedBox<double>& bounds() const { return bounds_; }
  double bbox_diagonal() const { return bounds_.diagonal().norm(); }
  double total_area() const;

  TriangleMesh transformed(const Rigid& t) const;
  TriangleMesh scaled(double s) const;
  TriangleMesh with_vertices(VertexMatrix vertices) const;

  Submesh extract(std::span<const int> face_ids) const;

  static TriangleMesh merge(std::span<const TriangleMesh> parts);

 private:
  void derive();

  VertexMatrix vertices_;
  FaceMatrix faces_;
  Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor> normals_;
  std::vector<double> areas_;
  std::vector<FaceEdge> face_edges_;
  std::vector<std::vector<int>> face_neighbors_;
  AlignedBox<double> bounds_;
};

struct Submesh {
  TriangleMesh mesh;
  std::vector<int> parent_face;    // sub face -> parent face
  std::vector<int> parent_vertex;  // sub vertex -> parent vertex
};

}  // namespace gripforge
