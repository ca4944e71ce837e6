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

// Shared scene builders for the assembly, pipeline and acceptance tests.

#pragma once

#include <random>

#include "gripforge/assembly/constraints.hpp"
#include "gripforge/primitives/sampling.hpp"
#include "gripforge/mesh/shapes.hpp"
#include "gripforge/pipeline/demo.hpp"
#include "gripforge/segmentation/segments.hpp"

namespace fixtures {

using namespace gripforge;

inline Rigid translation(double x, double y, double z) {
  Rigid t = Rigid::Identity();
  t.translation() = Vec3(x, y, z);
  return t;
}

/// Model with the whole mesh as a single segment.
inline ComponentModel single_segment_model(const std::string& id, const TriangleMesh& mesh,
                                           std::uint64_t seed = 7) {
  ComponentModel m;
  m.id = id;
  m.mesh = mesh;
  m.segments.segment_of_face.assign(mesh.num_faces(), 0);
  m.segments.faces.resize(1);
  for (int f = 0; f < mesh.num_faces(); ++f) m.segments.faces[0].push_back(f);
  m.segments.cluster = {0};
  m.fits = fit_segments(mesh, m.segments, FitParams{}, seed);
  return m;
}

inline ComponentModel segmented_model(const std::string& id, const TriangleMesh& mesh, std::uint64_t seed = 7) {
  ComponentModel m;
  m.id = id;
  m.mesh = mesh;
  SegmentationParams sp;
  sp.sdf.seed = seed;
  m.segments = segment_mesh(mesh, sp).segments;
  m.fits = fit_segments(mesh, m.segments, FitParams{}, seed);
  return m;
}

inline TriangleMesh rotor_shaft() { return demo::rotor_shaft(); }
inline TriangleMesh rotor_housing() { return demo::rotor_housing(); }

/// Insertion straight down from 100 mm above the final pose.
inline AssemblyOperation drop_in(const std::string& active, std::vector<std::string> passive, double rise = 100) {
  AssemblyOperation op;
  op.active = active;
  op.passive = std::move(passive);
  op.t_before = translation(0, 0, rise);
  op.t_after = Rigid::Identity();
  return op;
}

/// Thin closed shell hugging `inner` with `clearance` on every side.
inline TriangleMesh enclosing_shell(const AlignedBox<double>& inner, double clearance) {
  const Vec3 pad = Vec3::Constant(clearance);
  return shapes::box(inner.lo - pad, inner.hi + pad, 4);
}

// Points on the lateral surface and both caps of an analytic cylinder.
inline PointCloud cylinder_cloud(const Vec3& base, const Vec3& axis, double r, double h, int n,
                                 std::uint64_t seed, double noise = 0) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> U(0, 1);
  std::normal_distribution<double> N(0, noise > 0 ? noise : 1);
  const Vec3 u = any_orthonormal(axis), v = axis.cross(u);
  PointCloud c;
  const double lateral = 2 * kPi * r * h, cap = kPi * r * r;
  for (int i = 0; i < n; ++i) {
    const double pick = U(gen) * (lateral + 2 * cap);
    const double phi = 2 * kPi * U(gen);
    const Vec3 radial = std::cos(phi) * u + std::sin(phi) * v;
    Vec3 p, nor;
    if (pick < lateral) {
      p = base + U(gen) * h * axis + r * radial;
      nor = radial;
    } else {
      const bool top = pick < lateral + cap;
      p = base + (top ? h : 0) * axis + r * std::sqrt(U(gen)) * radial;
      nor = top ? axis : Vec3(-axis);
    }
    if (noise > 0) p += Vec3(N(gen), N(gen), N(gen)) * noise;
    c.points.push_back(p);
    c.normals.push_back(nor);
  }
  return c;
}

// Independent triangle/box test: clip the triangle by the six box slabs.
inline bool oracle_overlap(const OrientedBox<double>& box, const Vec3& a, const Vec3& b, const Vec3& c) {
  std::vector<Vec3> poly{box.to_local(a), box.to_local(b), box.to_local(c)};
  for (int k = 0; k < 3 && !poly.empty(); ++k)
    for (double s : {1.0, -1.0}) {
      std::vector<Vec3> out;
      const auto inside = [&](const Vec3& p) { return box.half[k] - s * p[k]; };
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec3 p = poly[i], q = poly[(i + 1) % poly.size()];
        const double dp = inside(p), dq = inside(q);
        if (dp >= 0) out.push_back(p);
        if ((dp >= 0) != (dq >= 0)) out.push_back(p + (q - p) * (dp / (dp - dq)));
      }
      poly = std::move(out);
      if (poly.empty()) break;
    }
  return !poly.empty();
}

inline bool oracle_collision(const GripperSolid& posed, const std::vector<TriangleMesh>& obstacles) {
  for (const auto& m : obstacles)
    for (const auto& b : posed.boxes)
      for (int f = 0; f < m.num_faces(); ++f)
        if (oracle_overlap(b, m.corner(f, 0), m.corner(f, 1), m.corner(f, 2))) return true;
  return false;
}

}  // namespace fixtures
