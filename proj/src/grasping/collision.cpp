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

#include "gripforge/grasping/collision.hpp"

#include <algorithm>

namespace gripforge {

CollisionMesh::CollisionMesh(TriangleMesh mesh)
    : mesh_(std::make_unique<TriangleMesh>(std::move(mesh))),
      bvh_(std::make_unique<RayAccelerator>(*mesh_)) {}

template <typename Visit>
bool CollisionMesh::query(const OrientedBox<double>& box, Visit&& visit) const {
  const auto& nodes = bvh_->nodes();
  const auto& order = bvh_->order();
  if (nodes.empty()) return false;
  const AlignedBox<double> outer = box.bounds();
  int stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const auto& node = nodes[stack[--top]];
    if (!node.box.overlaps(outer) || !obb_aabb_overlap(box, node.box)) continue;
    if (node.left < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        const int f = order[i];
        if (triangle_obb_overlap(box, mesh_->corner(f, 0), mesh_->corner(f, 1), mesh_->corner(f, 2)) &&
            visit(f))
          return true;
      }
    } else {
      stack[top++] = node.right;
      stack[top++] = node.left;
    }
  }
  return false;
}

bool CollisionMesh::intersects(const OrientedBox<double>& box, const std::vector<char>* skip) const {
  return query(box, [&](int f) { return !skip || !(*skip)[f]; });
}

std::vector<int> CollisionMesh::overlapping_faces(const OrientedBox<double>& box) const {
  std::vector<int> out;
  query(box, [&](int f) {
    out.push_back(f);
    return false;
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool check_collision(const GripperSolid& posed, std::span<const CollisionMesh* const> obstacles) {
  for (const CollisionMesh* o : obstacles)
    for (const auto& b : posed.boxes)
      if (o->intersects(b)) return true;
  return false;
}

}  // namespace gripforge
