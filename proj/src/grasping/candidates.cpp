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

#include "gripforge/grasping/candidates.hpp"

#include <cmath>

namespace gripforge {
namespace {

Rigid make_pose(const Vec3& x, const Vec3& z, const Vec3& origin) {
  Rigid t = Rigid::Identity();
  t.linear().col(0) = x;
  t.linear().col(1) = z.cross(x);
  t.linear().col(2) = z;
  t.translation() = origin;
  return t;
}

}  // namespace

std::vector<GraspCandidate> generate_two_finger_grasps(const FacetPair& pair, int segment,
                                                       const GraspSampling& s) {
  std::vector<GraspCandidate> out;
  const Vec3 x = pair.closing;
  const Vec3 base = any_orthonormal(x);
  const Vec3 mid = 0.5 * (pair.contact_a + pair.contact_b);
  for (int r = 0; r < s.n_rotations; ++r) {
    const double phi = 2 * kPi * r / s.n_rotations;
    const Vec3 z = Eigen::AngleAxisd(phi, x) * base;
    for (int k = 0; k < s.depth_samples; ++k) {
      const double depth = s.depth_start + k * s.depth_step;
      GraspCandidate c;
      c.type = GripperType::kTwoFingerParallel;
      c.pose = make_pose(x, z, mid + depth * z);
      c.width = pair.width;
      c.contacts = {pair.contact_a, pair.contact_b};
      c.contact_depth = depth;
      c.segment = segment;
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<GraspCandidate> generate_three_finger_grasps(const FittedCylinder& cyl, int segment,
                                                         const GraspSampling& s) {
  std::vector<GraspCandidate> out;
  const double r = cyl.radius;
  for (int dir = 0; dir < 2; ++dir) {
    const Vec3 z = dir == 0 ? cyl.axis : Vec3(-cyl.axis);
    const Vec3 base = any_orthonormal(z);
    const double entry = -cyl.height / 2;  // axial coordinate along z of the palm-side end
    for (int a = 0; a < s.n_axial; ++a) {
      const double engaged = cyl.height * (a + 1) / s.n_axial;
      const Vec3 origin = cyl.point + (entry + engaged) * z;
      const double depth = engaged / 2;
      for (int k = 0; k < s.n_rotations_3f; ++k) {
        const double phi = (2 * kPi / 3) * k / s.n_rotations_3f;
        const Vec3 x = Eigen::AngleAxisd(phi, z) * base;
        GraspCandidate c;
        c.type = GripperType::kThreeFingerCentric;
        c.pose = make_pose(x, z, origin);
        c.width = 2 * r;
        c.contact_depth = depth;
        c.segment = segment;
        for (int i = 0; i < 3; ++i) {
          const double t = 2 * kPi * i / 3;
          c.contacts.push_back(c.pose * Vec3(r * std::cos(t), r * std::sin(t), -depth));
        }
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

}  // namespace gripforge
