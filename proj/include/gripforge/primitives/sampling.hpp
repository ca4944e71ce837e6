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

#include <cstdint>
#include <span>
#include <vector>

#include "gripforge/mesh/triangle_mesh.hpp"

namespace gripforge {

struct PointCloud {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;  // unit
  std::vector<int> faces;     // source face per point; empty for synthetic clouds

  int size() const { return static_cast<int>(points.size()); }
  PointCloud transformed(const Rigid& t) const;
};

/// Area-weighted uniform samples over `faces`, carrying the face normals.
PointCloud sample_surface(const TriangleMesh& mesh, std::span<const int> faces, int count,
                          std::uint64_t seed);

}  // namespace gripforge
