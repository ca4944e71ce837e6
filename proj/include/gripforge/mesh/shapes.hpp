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

#include "gripforge/mesh/triangle_mesh.hpp"

namespace gripforge::shapes {

/// Axis-aligned box [lo, hi] with each face split into an n x m grid whose
/// cells are at most `max_edge` long.
TriangleMesh box(const Vec3& lo, const Vec3& hi, double max_edge = 0);

/// Box centred at the origin.
TriangleMesh box(const Vec3& size);

/// Surface of revolution around +z. `profile` holds (radius, z) points; a
/// profile whose first and last points have radius 0 is closed by the axis,
/// otherwise it is treated as a closed loop (e.g. a washer cross-section).
/// Profile edges are split so that no piece is longer than `max_edge`.
TriangleMesh revolve(const std::vector<Vec2>& profile, int sides, double max_edge = 0);

/// Solid cylinder around +z spanning [z0, z1].
TriangleMesh cylinder(double radius, double z0, double z1, int sides, double max_edge = 0);

/// Coaxial stack of solid cylinders; steps[i] = (radius, height), bottom at z0.
TriangleMesh stepped_shaft(const std::vector<Vec2>& steps, double z0, int sides,
                           double max_edge = 0);

/// Annular ring (washer / tube) with radii r_in < r_out spanning [z0, z1].
TriangleMesh ring(double r_in, double r_out, double z0, double z1, int sides,
                  double max_edge = 0);

/// Cylinder whose lateral surface carries an axisymmetric saw-tooth groove
/// profile of the given pitch and depth.
TriangleMesh threaded_cylinder(double radius, double height, double pitch, double depth,
                               int sides);

/// Geodesic sphere by repeated subdivision of an icosahedron (20 * 4^level
/// faces).
TriangleMesh icosphere(double radius, int level);

/// Prism extruding a simple counter-clockwise polygon along +z over [z0, z1].
TriangleMesh prism(const std::vector<Vec2>& polygon, double z0, double z1);

}  // namespace gripforge::shapes
