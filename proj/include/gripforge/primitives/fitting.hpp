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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gripforge/core/geometry.hpp"
#include "gripforge/primitives/sampling.hpp"

namespace gripforge {

struct FittedCylinder {
  Vec3 point = Vec3::Zero();  // axis point at mid height of the inliers
  Vec3 axis = Vec3::UnitZ();
  double radius = 0;
  double height = 0;
  bool lateral_surface_nonempty = false;
  double inlier_fraction = 0;
  double angular_coverage_deg = 0;
  std::vector<int> inliers;

  double volume() const { return kPi * radius * radius * height; }
  /// Distance of p from the lateral surface.
  double surface_distance(const Vec3& p) const;
};

struct CylinderFitParams {
  double distance_tol = 0.1;
  int max_iters = 1000;
  std::uint64_t seed = 0;
  double normal_tol_deg = 30;        // inlier normal vs radial direction
  double min_inlier_fraction = 0.25;  // below this: no fit
  double min_radius = 0.1;
  double max_radius_factor = 10;      // times the cloud bbox diagonal
  int coverage_bins = 32;
  double nonempty_coverage_deg = 270;
  double nonempty_inlier_fraction = 0.4;
};

/// RANSAC over two-point-with-normal cylinder hypotheses, then least-squares
/// refinement on the inliers. Throws Error(kTooFewPoints) below 50 points.
std::optional<FittedCylinder> fit_cylinder_ransac(const PointCloud& cloud,
                                                  const CylinderFitParams& params);

/// Faces are ordered (-axis0, +axis0, -axis1, +axis1, -axis2, +axis2).
struct FittedBox {
  OrientedBox<double> box;
  std::array<bool, 6> nonempty{};

  double volume() const { return box.volume(); }
  Vec3 face_normal(int face) const {
    return (face % 2 ? 1.0 : -1.0) * box.axes.col(face / 2);
  }
  /// True if both faces across `axis` are nonempty.
  bool pair_nonempty(int axis) const { return nonempty[2 * axis] && nonempty[2 * axis + 1]; }
};

/// Best of the PCA frame of the hull vertices and the hull-face-flush frames,
/// refined by a per-axis +-15 degree rotation search at 1 degree steps.
/// Throws Error(kDegenerateHull) for flat input.
FittedBox fit_oriented_box(std::span<const Vec3> points);

/// Volume of the bounding box of `points` in the frame `axes`.
double box_volume_in_frame(std::span<const Vec3> points, const Mat3& axes);

struct EmptinessParams {
  double shell_tol = 1.0;  // mm
  double coverage_threshold = 0.3;
  int grid = 16;
  double normal_tol_deg = 10;  // point normal vs outward face normal
};

/// A face is nonempty when the points near its plane, with normals facing the
/// same way, occupy at least the threshold fraction of its grid cells.
std::array<bool, 6> detect_box_face_emptiness(const PointCloud& cloud, const FittedBox& box,
                                              const EmptinessParams& params);

}  // namespace gripforge
