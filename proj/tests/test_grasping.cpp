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

#include <doctest.h>

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "gripforge/core/error.hpp"
#include "gripforge/grasping/candidates.hpp"
#include "gripforge/grasping/collision.hpp"
#include "gripforge/mesh/shapes.hpp"

using namespace gripforge;
using fixtures::oracle_collision;
using fixtures::oracle_overlap;

namespace {

std::vector<int> all_faces(const TriangleMesh& m) {
  std::vector<int> f(m.num_faces());
  for (int i = 0; i < m.num_faces(); ++i) f[i] = i;
  return f;
}

std::vector<double> sorted_widths(const std::vector<FacetPair>& pairs) {
  std::vector<double> w;
  for (const auto& p : pairs) w.push_back(std::round(p.width * 1e9) / 1e9);
  std::sort(w.begin(), w.end());
  return w;
}

FacetPairParams any_area() {
  FacetPairParams p;
  p.min_area = 0;
  return p;
}

}  // namespace

TEST_CASE("cube clusters into six unit facets") {
  const TriangleMesh m = shapes::box(Vec3(0, 0, 0), Vec3(1, 1, 1));
  const auto facets = planar_cluster(m, all_faces(m), 10);
  REQUIRE(facets.size() == 6);
  for (const auto& f : facets) CHECK(f.area == doctest::Approx(1.0));
}

TEST_CASE("cylinder facets span a bounded number of side strips") {
  const int sides = 64;
  const TriangleMesh m = shapes::cylinder(10, 0, 20, sides, 3.0);
  std::vector<int> lateral;
  for (int f = 0; f < m.num_faces(); ++f)
    if (std::abs(m.normal(f).z()) < 1e-9) lateral.push_back(f);
  const auto facets = planar_cluster(m, lateral, 10);
  const double side_angle = 360.0 / sides;
  const int bound = static_cast<int>(2 * (10 / side_angle) + 1);
  for (const auto& f : facets) {
    std::set<int> strips;
    for (int i : f.faces) {
      const Vec3 c = m.centroid(i);
      double a = std::atan2(c.y(), c.x());
      if (a < 0) a += 2 * kPi;
      strips.insert(static_cast<int>(a / (2 * kPi) * sides));
    }
    CHECK(strips.size() >= 1);
    CHECK(static_cast<int>(strips.size()) <= bound);
  }
}

TEST_CASE("sphere is one facet under a permissive tolerance") {
  const TriangleMesh m = shapes::icosphere(5, 2);
  CHECK(planar_cluster(m, all_faces(m), 180).size() == 1);
}

TEST_CASE("planar clustering partitions into connected facets within tolerance") {
  for (const TriangleMesh& m :
       std::vector<TriangleMesh>{shapes::icosphere(5, 2), shapes::threaded_cylinder(6, 20, 2, 0.6, 32),
                                 shapes::stepped_shaft({{8, 10}, {4, 10}}, 0, 24, 2.0)}) {
    for (double tol : {5.0, 15.0, 40.0}) {
      std::vector<int> subset;
      for (int f = 0; f < m.num_faces(); f += (f % 7 == 0) ? 2 : 1) subset.push_back(f);
      const auto facets = planar_cluster(m, subset, tol);
      std::vector<int> count(m.num_faces(), 0), owner(m.num_faces(), -1);
      for (std::size_t i = 0; i < facets.size(); ++i)
        for (int f : facets[i].faces) {
          ++count[f];
          owner[f] = static_cast<int>(i);
          CHECK(rad2deg(angle_between(m.normal(f), facets[i].normal)) <= tol + 1e-9);
        }
      for (int f : subset) CHECK(count[f] == 1);
      for (std::size_t i = 0; i < facets.size(); ++i) {
        std::deque<int> q{facets[i].faces.front()};
        std::set<int> seen{q.front()};
        while (!q.empty()) {
          const int f = q.front();
          q.pop_front();
          for (int g : m.face_neighbors()[f])
            if (owner[g] == static_cast<int>(i) && seen.insert(g).second) q.push_back(g);
        }
        CHECK(seen.size() == facets[i].faces.size());
      }
    }
  }
}

TEST_CASE("cube has three opposing facet pairs of unit width") {
  const TriangleMesh m = shapes::box(Vec3(0, 0, 0), Vec3(1, 1, 1));
  const auto pairs = find_parallel_facet_pairs(m, planar_cluster(m, all_faces(m), 10), any_area());
  REQUIRE(pairs.size() == 3);
  for (const auto& p : pairs) {
    CHECK(p.width == doctest::Approx(1.0));
    CHECK(p.overlap_area == doctest::Approx(1.0));
    CHECK((0.5 * (p.contact_a + p.contact_b) - Vec3(0.5, 0.5, 0.5)).norm() < 1e-9);
  }
}

TEST_CASE("L block pairs only where material overlaps") {
  const TriangleMesh l = shapes::prism({{0, 0}, {20, 0}, {20, 10}, {10, 10}, {10, 20}, {0, 20}}, 0, 10);
  const auto pairs = find_parallel_facet_pairs(l, planar_cluster(l, all_faces(l), 10), any_area());
  CHECK(sorted_widths(pairs) == std::vector<double>{10, 10, 10, 20, 20});

  // Step profile: the 5 mm wing pair and the 0 mm pair have no overlap.
  const TriangleMesh step =
      shapes::prism({{0, 0}, {10, 0}, {10, 5}, {20, 5}, {20, 15}, {10, 15}, {10, 10}, {0, 10}}, 0, 30);
  const auto sp = find_parallel_facet_pairs(step, planar_cluster(step, all_faces(step), 10), any_area());
  CHECK(sorted_widths(sp) == std::vector<double>{10, 10, 10, 10, 20, 30});
  for (const auto& p : sp) {
    CHECK(p.overlap_area > 0);
    CHECK(p.width == doctest::Approx((p.contact_a - p.contact_b).norm()));
  }
}

TEST_CASE("width and area filters apply") {
  const TriangleMesh a = shapes::box(Vec3(0, 0, 0), Vec3(10, 10, 1));
  const TriangleMesh b = shapes::box(Vec3(0, 0, 50), Vec3(10, 10, 51));
  const TriangleMesh m = TriangleMesh::merge(std::vector<TriangleMesh>{a, b});
  const auto facets = planar_cluster(m, all_faces(m), 10);
  FacetPairParams p = any_area();
  p.max_width = 40;
  for (const auto& pr : find_parallel_facet_pairs(m, facets, p)) CHECK(pr.width <= 40);
  p.max_width = 0.5;
  CHECK(find_parallel_facet_pairs(m, facets, p).empty());
  p.max_width = 1e9;
  p.min_area = 25;
  // Only the 10x10 faces qualify: each plate across its thickness, plus the
  // outer faces of the two plates.
  CHECK(sorted_widths(find_parallel_facet_pairs(m, facets, p)) == std::vector<double>{1, 1, 51});
}

TEST_CASE("two finger candidates") {
  const TriangleMesh m = shapes::box(Vec3(0, 0, 0), Vec3(20, 30, 40));
  const auto pairs = find_parallel_facet_pairs(m, planar_cluster(m, all_faces(m), 10), any_area());
  REQUIRE(!pairs.empty());
  GraspSampling s;
  s.n_rotations = 12;
  for (const auto& pair : pairs) {
    const auto c = generate_two_finger_grasps(pair, 3, s);
    REQUIRE(c.size() == 12u * s.depth_samples);
    for (int r = 0; r < 12; ++r)
      for (int k = 0; k < s.depth_samples; ++k) {
        const GraspCandidate& g = c[r * s.depth_samples + k];
        const GraspCandidate& next = c[((r + 1) % 12) * s.depth_samples + k];
        CHECK(rad2deg(angle_between(g.pose.linear().col(2), next.pose.linear().col(2))) ==
              doctest::Approx(30));
        CHECK((g.pose.linear().col(0) - pair.closing).norm() < 1e-12);
        CHECK(is_rotation(g.pose.linear()));
        CHECK(g.width == pair.width);
        CHECK(g.segment == 3);
        // Contacts land on the inner finger faces.
        const GripperSolid solid = build_gripper_solid(g.type, g.width, g.contact_depth + 1);
        for (int i = 0; i < 2; ++i) {
          const Vec3 local = g.pose.inverse() * g.contacts[i];
          CHECK(std::abs(local.dot(solid.finger_direction(i)) - g.width / 2) < 1e-6);
          CHECK(std::abs(local.y()) < 1e-6);
          CHECK(local.z() == doctest::Approx(-g.contact_depth));
          CHECK(solid.boxes[i + 1].contains(local, 1e-6));
        }
        CHECK(((g.contacts[0] - g.contacts[1]).dot(g.pose.linear().col(0))) == doctest::Approx(g.width));
      }
  }
}

TEST_CASE("three finger candidates") {
  FittedCylinder cyl;
  cyl.point = Vec3(1, 2, 3);
  cyl.axis = Vec3(1, 1, 1).normalized();
  cyl.radius = 7;
  cyl.height = 30;
  cyl.lateral_surface_nonempty = true;
  GraspSampling s;
  s.n_rotations_3f = 4;
  s.n_axial = 2;
  const auto c = generate_three_finger_grasps(cyl, 1, s);
  REQUIRE(c.size() == 16);
  int up = 0, down = 0;
  for (const auto& g : c) {
    const Vec3 z = g.pose.linear().col(2);
    CHECK(std::abs(std::abs(z.dot(cyl.axis)) - 1) < 1e-12);
    (z.dot(cyl.axis) > 0 ? up : down)++;
    CHECK(g.width == 2 * cyl.radius);
    REQUIRE(g.contacts.size() == 3);
    const GripperSolid solid = build_gripper_solid(g.type, g.width, 2 * g.contact_depth);
    for (int i = 0; i < 3; ++i) {
      const Vec3 q = g.contacts[i] - cyl.point;
      CHECK(std::abs((q - q.dot(cyl.axis) * cyl.axis).norm() - cyl.radius) < 1e-6);
      CHECK(std::abs(q.dot(cyl.axis)) <= cyl.height / 2 + 1e-9);
      const Vec3 a = g.pose.inverse() * g.contacts[i];
      const Vec3 b = g.pose.inverse() * g.contacts[(i + 1) % 3];
      const double da = std::remainder(std::atan2(b.y(), b.x()) - std::atan2(a.y(), a.x()), 2 * kPi);
      CHECK(std::abs(da - 2 * kPi / 3) < 1e-6);
      CHECK(std::abs(a.dot(solid.finger_direction(i)) - cyl.radius) < 1e-6);
      CHECK(solid.boxes[i + 1].contains(a, 1e-6));
    }
  }
  CHECK(up == 8);
  CHECK(down == 8);
}

TEST_CASE("gripper solids") {
  const GripperSolid two = build_gripper_solid(GripperType::kTwoFingerParallel, 20, 30);
  REQUIRE(two.finger_count() == 2);
  const auto& f0 = two.boxes[1];
  const auto& f1 = two.boxes[2];
  const double inner0 = (f0.center - f0.half.x() * f0.axes.col(0)).x();
  const double inner1 = (f1.center - f1.half.x() * f1.axes.col(0)).x();
  CHECK(inner0 - inner1 == doctest::Approx(20));
  CHECK(2 * f0.half.z() == doctest::Approx(30));
  CHECK(f0.center.z() + f0.half.z() == doctest::Approx(0));
  const auto& palm = two.boxes[0];
  CHECK(palm.center.z() + palm.half.z() == doctest::Approx(-30));

  const GripperSolid three = build_gripper_solid(GripperType::kThreeFingerCentric, 20, 25);
  REQUIRE(three.finger_count() == 3);
  for (int i = 0; i < 3; ++i) {
    const auto& f = three.boxes[i + 1];
    const Vec3 inner = f.center - f.half.x() * f.axes.col(0);
    CHECK(Vec2(inner.x(), inner.y()).norm() == doctest::Approx(10));
    CHECK(std::abs(f.axes.col(0).dot(Vec3(inner.x(), inner.y(), 0).normalized()) - 1) < 1e-12);
    CHECK(2 * f.half.z() == doctest::Approx(25));
  }

  const GripperSolid closed = build_gripper_solid(GripperType::kTwoFingerParallel, 0, 10);
  const TriangleMesh cm = closed.to_mesh();
  CHECK(cm.num_faces() == 36);
  CHECK(cm.face_edges().size() == 54u);  // every edge shared by two faces
  CHECK_THROWS_AS(build_gripper_solid(GripperType::kTwoFingerParallel, -1, 10), Error);
  CHECK_THROWS_AS(build_gripper_solid(GripperType::kThreeFingerCentric, 5, 0), Error);
}

TEST_CASE("collision basics") {
  const CollisionMesh plate(shapes::box(Vec3(-50, -50, -1), Vec3(50, 50, 1)));
  const CollisionMesh* obs[] = {&plate};
  const GripperSolid g = build_gripper_solid(GripperType::kTwoFingerParallel, 20, 30);
  Rigid far = Rigid::Identity();
  far.translation() = Vec3(0, 0, 1000);
  CHECK_FALSE(check_collision(g.posed(far), obs));
  Rigid through = Rigid::Identity();
  through.translation() = Vec3(0, 0, 10);  // fingers span z in [-20, 10]
  CHECK(check_collision(g.posed(through), obs));

  // Small block between the open fingers, below the palm.
  const CollisionMesh small(shapes::box(Vec3(-2, -2, -5), Vec3(2, 2, 5)));
  const CollisionMesh* obs2[] = {&small};
  const GripperSolid wide = build_gripper_solid(GripperType::kTwoFingerParallel, 12, 30);
  CHECK_FALSE(check_collision(wide.posed(Rigid(Eigen::Translation3d(0, 0, 6))), obs2));

  // A crumb swallowed by the palm.
  const CollisionMesh crumb(shapes::box(Vec3(-1, -1, -41), Vec3(1, 1, -39)));
  const CollisionMesh* obs3[] = {&crumb};
  CHECK(check_collision(g, obs3));
}

TEST_CASE("collision agrees with the brute-force oracle on random poses") {
  std::vector<TriangleMesh> scene{shapes::ring(20, 30, 0, 15, 48, 4.0),
                                  shapes::box(Vec3(-40, -40, -6), Vec3(40, 40, 0), 10.0)};
  std::vector<CollisionMesh> meshes;
  for (const auto& m : scene) meshes.emplace_back(m);
  std::vector<const CollisionMesh*> obs;
  for (const auto& m : meshes) obs.push_back(&m);

  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> U(-1, 1);
  int hits = 0;
  int agree = 0;
  for (int t = 0; t < 500; ++t) {
    const GripperType type = t % 2 ? GripperType::kThreeFingerCentric : GripperType::kTwoFingerParallel;
    const GripperSolid solid = build_gripper_solid(type, 20 + 20 * U(gen), 40 + 30 * U(gen));
    Rigid pose = Rigid::Identity();
    pose.linear() = Eigen::Quaterniond(U(gen), U(gen), U(gen), U(gen)).normalized().toRotationMatrix();
    pose.translation() = Vec3(70 * U(gen), 70 * U(gen), 20 + 60 * U(gen));
    const GripperSolid posed = solid.posed(pose);
    const bool fast = check_collision(posed, obs);
    const bool slow = oracle_collision(posed, scene);
    agree += fast == slow;
    hits += slow;
  }
  CHECK(agree == 500);
  CHECK(hits > 50);
  CHECK(hits < 450);
}

TEST_CASE("overlapping faces and skip masks") {
  const CollisionMesh cube(shapes::box(Vec3(0, 0, 0), Vec3(10, 10, 10), 2.0));
  OrientedBox<double> slab;
  slab.center = Vec3(10, 5, 5);
  slab.half = Vec3(0.1, 2, 2);
  const auto faces = cube.overlapping_faces(slab);
  REQUIRE(!faces.empty());
  for (int f : faces) CHECK(cube.mesh().centroid(f).x() > 9);
  std::vector<char> skip(cube.mesh().num_faces(), 0);
  for (int f : faces) skip[f] = 1;
  CHECK(cube.intersects(slab));
  CHECK_FALSE(cube.intersects(slab, &skip));
}
