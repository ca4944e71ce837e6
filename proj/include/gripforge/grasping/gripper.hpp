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

#include <vector>

#include "gripforge/core/geometry.hpp"
#include "gripforge/mesh/triangle_mesh.hpp"
#include "gripforge/primitives/selection.hpp"

namespace gripforge {

struct GripperGeometry {
  double finger_width = 8;      // across the finger, tangential
  double finger_thickness = 8;  // radial / along the closing axis
  double palm_size = 60;        // minimum square side
  double palm_height = 20;
  double contact_tol = 0.5;     // slab around finger inner faces ignored on the grasped segment
};

/// Gripper frame: origin midway between the fingertips, fingers along -z from
/// the tips (z = 0) to the palm (z = -L), closing axis +x. Box 0 is the palm.
struct GripperSolid {
  GripperType type = GripperType::kTwoFingerParallel;
  double width = 0;
  double finger_length = 0;
  std::vector<OrientedBox<double>> boxes;

  int finger_count() const { return static_cast<int>(boxes.size()) - 1; }
  /// Unit direction from the axis to finger i's inner face.
  Vec3 finger_direction(int i) const;
  /// Thin boxes straddling each finger's inner face.
  std::vector<OrientedBox<double>> contact_slabs(double tol) const;
  GripperSolid posed(const Rigid& t) const;
  TriangleMesh to_mesh() const;
};

/// Throws Error(kInvalidArgument) for negative width or non-positive length.
GripperSolid build_gripper_solid(GripperType type, double width, double finger_length,
                                 const GripperGeometry& geometry = {});

}  // namespace gripforge
