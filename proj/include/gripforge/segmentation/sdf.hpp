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
#include <vector>

#include "gripforge/mesh/ray_accelerator.hpp"
#include "gripforge/mesh/triangle_mesh.hpp"

namespace gripforge {

struct SdfParams {
  int rays_per_face = 30;
  double cone_angle_deg = 120;  // full apex angle
  std::uint64_t seed = 0;
  /// Hits closer than this fraction of the bbox diagonal are ignored.
  double origin_offset = 1e-4;
  /// Rays closer than this to the cone axis are weighted as if at this angle.
  double min_weight_angle_deg = 1.0;
};

/// Per-face shape diameter. Faces where no ray survived are flagged missing.
struct SdfField {
  std::vector<double> values;
  std::vector<char> defined;

  int size() const { return static_cast<int>(values.size()); }
  bool is_defined(int f) const { return defined[f] != 0; }
  int missing_count() const;
};

/// Shape diameter per face: rays cast from the face centroid inside a cone
/// around the inward normal; lengths farther than one standard deviation from
/// the median are rejected and the rest averaged with weights inversely
/// proportional to their angle from the cone axis. Deterministic per seed;
/// the per-face ray pattern lives in the face's own frame.
SdfField compute_sdf(const TriangleMesh& mesh, const RayAccelerator& accel,
                     const SdfParams& params);

/// Fills missing faces with the mean of defined neighbours, breadth first.
/// Faces in components without any defined value get the global mean.
void fill_missing_sdf(const TriangleMesh& mesh, SdfField& sdf);

/// log(v / v_min + 1) / log(v_max / v_min + 1); all values must be defined.
std::vector<double> normalize_sdf(const SdfField& sdf);

}  // namespace gripforge
