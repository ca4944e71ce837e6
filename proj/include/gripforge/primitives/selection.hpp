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
#include <optional>
#include <span>
#include <string>

#include "gripforge/mesh/triangle_mesh.hpp"
#include "gripforge/primitives/fitting.hpp"

namespace gripforge {

enum class GripperType { kTwoFingerParallel, kThreeFingerCentric };
enum class PrimitiveKind { kCylinder, kBox };

const char* to_string(GripperType t);
const char* to_string(PrimitiveKind k);

struct PrimitiveSelection {
  int segment = -1;
  bool graspable = false;  // false: no primitive with a nonempty graspable surface
  PrimitiveKind primitive = PrimitiveKind::kBox;
  GripperType gripper = GripperType::kTwoFingerParallel;
  double width = 0;              // W_i
  Vec3 center = Vec3::Zero();    // primitive centre
  Vec3 axis = Vec3::UnitZ();     // cylinder axis, or closing direction of the box pair
  int box_axis = -1;             // chosen face-pair axis for boxes
  double height = 0;             // cylinder height, or box extent along the approach
  double hull_volume = 0;
  double primitive_volume = 0;
};

/// Picks the candidate with a nonempty graspable surface whose volume is
/// closest to the segment hull volume; ties go to the cylinder. Among
/// nonempty opposing box face pairs the narrowest is used.
PrimitiveSelection select_primitive(double hull_volume, const std::optional<FittedCylinder>& cylinder,
                                    const FittedBox& box);

struct FitParams {
  int samples = 5000;
  double cylinder_tol_factor = 0.005;  // times the segment bbox diagonal
  double shell_tol_factor = 0.02;      // times the segment bbox diagonal
  CylinderFitParams cylinder;          // distance_tol and seed are overwritten
  EmptinessParams emptiness;           // shell_tol is overwritten
};

struct SegmentFit {
  PointCloud cloud;
  std::optional<FittedCylinder> cylinder;
  std::optional<FittedBox> box;  // empty when the segment is flat
  PrimitiveSelection selection;
};

/// Samples the segment, fits both primitives and selects one. Flat segments
/// (no hull volume) come back ungraspable.
SegmentFit fit_segment(const TriangleMesh& mesh, std::span<const int> faces, int segment_id,
                       const FitParams& params, std::uint64_t seed);

}  // namespace gripforge
