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

#include <optional>
#include <vector>

#include "gripforge/mesh/triangle_mesh.hpp"

namespace gripforge {

struct RayHit {
  double distance = 0;
  int face = -1;
  Vec3 point = Vec3::Zero();
};

/// Bounding-volume hierarchy over the faces of a mesh. Holds a reference to
/// the mesh, which must outlive it. Queries are reentrant.
class RayAccelerator {
 public:
  explicit RayAccelerator(const TriangleMesh& mesh);

  const TriangleMesh& mesh() const { return *mesh_; }

  /// All intersections along the ray, sorted by (distance, face).
  std::vector<RayHit> cast_ray(const Vec3& origin, const Vec3& direction,
                               std::optional<int> ignore_face = std::nullopt) const;

  /// Closest hit with distance > min_distance.
  std::optional<RayHit> first_hit(const Vec3& origin, const Vec3& direction,
                                  double min_distance = 0,
                                  std::optional<int> ignore_face = std::nullopt) const;

  struct Node {
    AlignedBox<double> box;
    int left = -1;   // child index, or -1 for leaves
    int right = -1;
    int begin = 0;   // leaf range into order_
    int end = 0;
  };

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<int>& order() const { return order_; }

 private:
  int build(int begin, int end, std::vector<Vec3>& centroids);
  template <typename Visit>
  void traverse(const Vec3& origin, const Vec3& direction, Visit&& visit) const;

  const TriangleMesh* mesh_;
  std::vector<Node> nodes_;
  std::vector<int> order_;
};

/// Reference intersection by scanning every face.
std::vector<RayHit> cast_ray_brute_force(const TriangleMesh& mesh, const Vec3& origin,
                                         const Vec3& direction,
                                         std::optional<int> ignore_face = std::nullopt);

}  // namespace gripforge
