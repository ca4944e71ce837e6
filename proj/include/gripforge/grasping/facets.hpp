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

#include <span>
#include <vector>

#include "gripforge/mesh/triangle_mesh.hpp"

namespace gripforge {

/// Edge-connected, nearly planar set of faces.
struct PlanarFacet {
  std::vector<int> faces;  // ascending mesh face ids
  Vec3 normal = Vec3::UnitZ();  // area-weighted mean, unit
  Vec3 point = Vec3::Zero();    // area-weighted centroid
  double area = 0;
};

/// Region growing from the lowest unassigned face. A region is grown while
/// neighbours stay within the acceptance angle of the seed normal; if any
/// member ends up farther than angle_tol from the mean normal, the region is
/// regrown with the acceptance angle shrunk by 10%.
std::vector<PlanarFacet> planar_cluster(const TriangleMesh& mesh, std::span<const int> faces,
                                        double angle_tol_deg);

struct FacetPair {
  int a = -1, b = -1;          // facet indices; a lies on the +closing side
  Vec3 closing = Vec3::UnitX();  // unit, from b towards a
  Vec3 contact_a = Vec3::Zero();
  Vec3 contact_b = Vec3::Zero();
  double width = 0;         // (contact_a - contact_b) . closing
  double overlap_area = 0;  // of the two facets projected onto the mid-plane
};

struct FacetPairParams {
  double angle_tol_deg = 10;
  double min_area = 25;  // per facet
  double max_width = 1e9;
};

/// Opposing facets with anti-parallel outward normals and material in
/// between. Contacts are the overlap centroid projected along the closing
/// direction onto each facet plane.
std::vector<FacetPair> find_parallel_facet_pairs(const TriangleMesh& mesh,
                                                 const std::vector<PlanarFacet>& facets,
                                                 const FacetPairParams& params);

}  // namespace gripforge
