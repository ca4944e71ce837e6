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

#include "gripforge/grasping/gripper.hpp"

#include <algorithm>
#include <cmath>

#include "gripforge/core/error.hpp"
#include "gripforge/mesh/shapes.hpp"

namespace gripforge {
namespace {

Mat3 finger_axes(GripperType type, int i) {
  if (type == GripperType::kTwoFingerParallel) {
    Mat3 m = Mat3::Identity();
    if (i == 1) m.col(0) = -Vec3::UnitX(), m.col(1) = -Vec3::UnitY();
    return m;
  }
  const double t = 2 * kPi * i / 3;
  Mat3 m;
  m.col(0) = Vec3(std::cos(t), std::sin(t), 0);
  m.col(1) = Vec3(-std::sin(t), std::cos(t), 0);
  m.col(2) = Vec3::UnitZ();
  return m;
}

}  // namespace

Vec3 GripperSolid::finger_direction(int i) const { return boxes[i + 1].axes.col(0); }

std::vector<OrientedBox<double>> GripperSolid::contact_slabs(double tol) const {
  std::vector<OrientedBox<double>> out;
  for (int i = 0; i < finger_count(); ++i) {
    const OrientedBox<double>& f = boxes[i + 1];
    OrientedBox<double> s;
    s.axes = f.axes;
    s.center = f.center - f.half.x() * f.axes.col(0);
    s.half = Vec3(tol, f.half.y() + tol, f.half.z() + tol);
    out.push_back(s);
  }
  return out;
}

GripperSolid GripperSolid::posed(const Rigid& t) const {
  GripperSolid out = *this;
  for (auto& b : out.boxes) b = b.transformed(t);
  return out;
}

TriangleMesh GripperSolid::to_mesh() const {
  std::vector<TriangleMesh> parts;
  for (const auto& b : boxes) {
    const TriangleMesh local = shapes::box(-b.half, b.half);
    TriangleMesh::VertexMatrix v = local.vertices();
    for (int i = 0; i < v.rows(); ++i) v.row(i) = (b.axes * local.vertex(i) + b.center).transpose();
    parts.push_back(local.with_vertices(v));
  }
  return TriangleMesh::merge(parts);
}

GripperSolid build_gripper_solid(GripperType type, double width, double finger_length,
                                 const GripperGeometry& g) {
  if (!(width >= 0)) throw Error(ErrorCode::kInvalidArgument, "gripper width must be >= 0");
  if (!(finger_length > 0)) throw Error(ErrorCode::kInvalidArgument, "finger length must be > 0");
  if (!(g.finger_width > 0 && g.finger_thickness > 0 && g.palm_size > 0 && g.palm_height > 0))
    throw Error(ErrorCode::kInvalidArgument, "gripper dimensions must be positive");

  GripperSolid s;
  s.type = type;
  s.width = width;
  s.finger_length = finger_length;
  const double palm = std::max(g.palm_size, width + 2 * g.finger_thickness);
  OrientedBox<double> p;
  p.center = Vec3(0, 0, -finger_length - g.palm_height / 2);
  p.half = Vec3(palm / 2, palm / 2, g.palm_height / 2);
  s.boxes.push_back(p);
  const int fingers = type == GripperType::kTwoFingerParallel ? 2 : 3;
  for (int i = 0; i < fingers; ++i) {
    OrientedBox<double> f;
    f.axes = finger_axes(type, i);
    f.center = (width / 2 + g.finger_thickness / 2) * f.axes.col(0) + Vec3(0, 0, -finger_length / 2);
    f.half = Vec3(g.finger_thickness / 2, g.finger_width / 2, finger_length / 2);
    s.boxes.push_back(f);
  }
  return s;
}

}  // namespace gripforge
