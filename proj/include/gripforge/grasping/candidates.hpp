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

#include "gripforge/grasping/facets.hpp"
#include "gripforge/primitives/fitting.hpp"
#include "gripforge/primitives/selection.hpp"

namespace gripforge {

struct GraspCandidate {
  GripperType type = GripperType::kTwoFingerParallel;
  Rigid pose = Rigid::Identity();  // gripper frame in the component frame
  double width = 0;
  std::vector<Vec3> contacts;  // component frame; finger i touches contacts[i]
  double contact_depth = 0;    // distance of the contacts behind the fingertips
  int segment = -1;
};

struct GraspSampling {
  int n_rotations = 12;
  int depth_samples = 3;
  double depth_start = 2;  // mm behind the fingertips
  double depth_step = 4;
  int n_rotations_3f = 12;
  int n_axial = 3;
};

/// For each approach angle about the closing axis and each depth, the finger
/// inner faces pass through the two contacts.
std::vector<GraspCandidate> generate_two_finger_grasps(const FacetPair& pair, int segment,
                                                       const GraspSampling& sampling);

/// Approach along both cylinder axis directions; fingertips at n_axial
/// equally spaced axial positions and n_rotations offsets within 120 degrees.
std::vector<GraspCandidate> generate_three_finger_grasps(const FittedCylinder& cylinder, int segment,
                                                         const GraspSampling& sampling);

}  // namespace gripforge
