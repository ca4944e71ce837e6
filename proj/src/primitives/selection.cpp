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

#include "gripforge/primitives/selection.hpp"

#include <cmath>

#include "gripforge/core/error.hpp"
#include "gripforge/core/random.hpp"
#include "gripforge/mesh/convex_hull.hpp"

namespace gripforge {

const char* to_string(GripperType t) {
  return t == GripperType::kTwoFingerParallel ? "two_finger_parallel" : "three_finger_centric";
}

const char* to_string(PrimitiveKind k) { return k == PrimitiveKind::kCylinder ? "cylinder" : "box"; }

PrimitiveSelection select_primitive(double hull_volume, const std::optional<FittedCylinder>& cylinder,
                                    const FittedBox& box) {
  PrimitiveSelection s;
  s.hull_volume = hull_volume;

  const bool cyl_ok = cylinder && cylinder->lateral_surface_nonempty;
  int pair = -1;
  for (int k = 0; k < 3; ++k)
    if (box.pair_nonempty(k) && (pair < 0 || box.box.half[k] < box.box.half[pair])) pair = k;

  const double dc = cyl_ok ? std::abs(cylinder->volume() - hull_volume) : 0;
  const double db = pair >= 0 ? std::abs(box.volume() - hull_volume) : 0;
  if (cyl_ok && (pair < 0 || dc <= db)) {
    s.graspable = true;
    s.primitive = PrimitiveKind::kCylinder;
    s.gripper = GripperType::kThreeFingerCentric;
    s.width = 2 * cylinder->radius;
    s.center = cylinder->point;
    s.axis = cylinder->axis;
    s.height = cylinder->height;
    s.primitive_volume = cylinder->volume();
  } else if (pair >= 0) {
    s.graspable = true;
    s.primitive = PrimitiveKind::kBox;
    s.gripper = GripperType::kTwoFingerParallel;
    s.box_axis = pair;
    s.width = 2 * box.box.half[pair];
    s.center = box.box.center;
    s.axis = box.box.axes.col(pair);
    s.height = 2 * box.box.half.maxCoeff();
    s.primitive_volume = box.volume();
  }
  return s;
}

SegmentFit fit_segment(const TriangleMesh& mesh, std::span<const int> faces, int segment_id,
                       const FitParams& params, std::uint64_t seed) {
  SegmentFit out;
  out.cloud = sample_surface(mesh, faces, params.samples, seed);
  AlignedBox<double> bb;
  std::vector<Vec3> verts;
  verts.reserve(faces.size() * 3);
  for (int f : faces)
    for (int k = 0; k < 3; ++k) {
      verts.push_back(mesh.corner(f, k));
      bb.extend(verts.back());
    }
  const double diag = bb.diagonal().norm();

  CylinderFitParams cp = params.cylinder;
  cp.distance_tol = params.cylinder_tol_factor * diag;
  cp.seed = derive_seed(seed, 1);
  if (out.cloud.size() >= 50) out.cylinder = fit_cylinder_ransac(out.cloud, cp);

  out.selection.segment = segment_id;
  try {
    FittedBox box = fit_oriented_box(verts);
    EmptinessParams ep = params.emptiness;
    ep.shell_tol = params.shell_tol_factor * diag;
    box.nonempty = detect_box_face_emptiness(out.cloud, box, ep);
    const double hull = convex_hull_volume(verts);
    out.box = box;
    out.selection = select_primitive(hull, out.cylinder, box);
    out.selection.segment = segment_id;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateHull) throw;
  }
  return out;
}

}  // namespace gripforge
