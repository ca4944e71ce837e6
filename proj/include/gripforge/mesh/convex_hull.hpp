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

#include <array>
#include <span>
#include <vector>

#include "gripforge/core/geometry.hpp"

namespace gripforge {

/// Closed convex polytope: outward-oriented triangles over input point indices.
struct ConvexHull {
  std::vector<std::array<int, 3>> faces;
  std::vector<int> vertices;  // sorted unique input indices on the hull
  double volume = 0;
};

/// Quickhull in 3D. Throws Error(kDegenerateHull) when the points are
/// coplanar, collinear or fewer than four.
ConvexHull convex_hull(std::span<const Vec3> points);

double convex_hull_volume(std::span<const Vec3> points);

}  // namespace gripforge
