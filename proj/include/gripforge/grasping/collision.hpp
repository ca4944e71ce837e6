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

#include <memory>
#include <span>
#include <vector>

#include "gripforge/grasping/gripper.hpp"
#include "gripforge/mesh/ray_accelerator.hpp"

namespace gripforge {

/// Obstacle triangles under a bounding-volume hierarchy.
class CollisionMesh {
 public:
  explicit CollisionMesh(TriangleMesh mesh);

  const TriangleMesh& mesh() const { return *mesh_; }

  /// True if any face not flagged in `skip` touches the closed box.
  bool intersects(const OrientedBox<double>& box, const std::vector<char>* skip = nullptr) const;
  /// All faces touching the closed box, ascending.
  std::vector<int> overlapping_faces(const OrientedBox<double>& box) const;

 private:
  template <typename Visit>
  bool query(const OrientedBox<double>& box, Visit&& visit) const;

  std::unique_ptr<TriangleMesh> mesh_;
  std::unique_ptr<RayAccelerator> bvh_;
};

/// True iff a box of the posed solid touches an obstacle triangle. A box that
/// swallows a whole obstacle touches its triangles, so it counts as well.
bool check_collision(const GripperSolid& posed, std::span<const CollisionMesh* const> obstacles);

}  // namespace gripforge
