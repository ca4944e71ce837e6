#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "gripforge/core/error.hpp"
#include "gripforge/mesh/convex_hull.hpp"
#include "gripforge/mesh/io.hpp"
#include "gripforge/mesh/ray_accelerator.hpp"
#include "gripforge/mesh/shapes.hpp"
#include "gripforge/mesh/smoothing.hpp"

using namespace gripforge;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "gripforge_test_mesh";
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

std::string ascii_stl_cube() {
  // 12 facets of the unit cube, vertices repeated per facet.
  const double c[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                          {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  const int t[12][3] = {{0, 2, 1}, {0, 3, 2}, {4, 5, 6}, {4, 6, 7}, {0, 1, 5}, {0, 5, 4},
                        {2, 3, 7}, {2, 7, 6}, {1, 2, 6}, {1, 6, 5}, {0, 4, 7}, {0, 7, 3}};
  std::string s = "solid cube\n";
  for (const auto& f : t) {
    s += " facet normal 0 0 0\n  outer loop\n";
    for (int k : f)
      s += "   vertex " + std::to_string(c[k][0]) + " " + std::to_string(c[k][1]) + " " +
           std::to_string(c[k][2]) + "\n";
    s += "  endloop\n endfacet\n";
  }
  return s + "endsolid cube\n";
}

double max_abs_distortion(const TriangleMesh& a, const TriangleMesh& b) {
  return (a.vertices() - b.vertices()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("ascii stl cube welds to 8 vertices") {
  const fs::path p = temp_dir() / "cube.stl";
  write_text(p, ascii_stl_cube());
  CHECK(detect_mesh_format(p) == MeshFormat::kStlAscii);
  const LoadedMesh m = load_mesh(p);
  CHECK(m.mesh.num_faces() == 12);
  CHECK(m.mesh.num_vertices() == 8);
  CHECK(m.dropped_degenerate == 0);
  CHECK(m.mesh.face_edges().size() == 18);
}

TEST_CASE("obj with out-of-range face index is malformed") {
  const fs::path p = temp_dir() / "bad.obj";
  write_text(p, "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 4\n");
  try {
    load_mesh(p);
    FAIL("expected malformed geometry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformedGeometry);
  }
}

TEST_CASE("obj polygons, negative indices and degenerate drop") {
  const fs::path p = temp_dir() / "quad.obj";
  // A quad (2 triangles) plus a zero-area sliver sharing collinear points.
  write_text(p, "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nv 2 0 0\nf 1 2 3 4\nf -5 -4 -1\n");
  const LoadedMesh m = load_mesh(p);
  CHECK(m.mesh.num_faces() == 2);
  CHECK(m.dropped_degenerate == 1);
  CHECK(m.mesh.num_vertices() == 4);
}

TEST_CASE("unreadable and empty files are reported") {
  CHECK_THROWS_AS(load_mesh(temp_dir() / "does_not_exist.obj"), Error);
  const fs::path p = temp_dir() / "empty.obj";
  write_text(p, "v 0 0 0\n");
  try {
    load_mesh(p);
    FAIL("expected empty mesh");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyMesh);
  }
}

TEST_CASE("ply cylinder fixture: face count and unit normals") {
  const TriangleMesh cyl = shapes::cylinder(10, 0, 40, 64);
  const fs::path p = temp_dir() / "cyl.ply";
  write_ply(p, cyl);
  const LoadedMesh m = load_mesh(p, MeshFormat::kPlyAscii);
  // 64 side quads split in two, plus a 64-triangle fan per cap.
  CHECK(m.mesh.num_faces() == 64 * 2 + 2 * 64);
  for (int f = 0; f < m.mesh.num_faces(); ++f) CHECK(std::abs(m.mesh.normal(f).norm() - 1) < 1e-9);
  CHECK(max_abs_distortion(m.mesh, cyl) < 1e-6);
}

TEST_CASE("write/load round trips reproduce vertices") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int trial = 0; trial < 5; ++trial) {
    Rigid t = Rigid::Identity();
    t.linear() = Eigen::AngleAxisd(u(rng), Vec3(u(rng), u(rng), u(rng)).normalized()).toRotationMatrix();
    t.translation() = Vec3(u(rng), u(rng), u(rng));
    const TriangleMesh mesh = shapes::stepped_shaft({{5, 10}, {12, 4}, {7, 9}}, 0, 24).transformed(t);
    const fs::path ply = temp_dir() / "rt.ply";
    write_ply(ply, mesh);
    CHECK(max_abs_distortion(load_mesh(ply).mesh, mesh) < 1e-6);
    const fs::path obj = temp_dir() / "rt.obj";
    write_obj(obj, mesh);
    CHECK(max_abs_distortion(load_mesh(obj).mesh, mesh) < 1e-6);
    const fs::path stl = temp_dir() / "rt.stl";
    write_stl_binary(stl, mesh);
    const LoadedMesh back = load_mesh(stl);
    CHECK(detect_mesh_format(stl) == MeshFormat::kStlBinary);
    CHECK(back.mesh.num_faces() == mesh.num_faces());
  }
}

TEST_CASE("mesh validation rejects bad input") {
  TriangleMesh::VertexMatrix v(3, 3);
  v << 0, 0, 0, 1, 0, 0, 0, 1, 0;
  TriangleMesh::FaceMatrix f(1, 3);
  f << 0, 1, 3;
  CHECK_THROWS_AS(TriangleMesh(v, f), Error);
  f << 0, 1, 1;
  CHECK_THROWS_AS(TriangleMesh(v, f), Error);
  v(1, 0) = std::numeric_limits<double>::quiet_NaN();
  f << 0, 1, 2;
  CHECK_THROWS_AS(TriangleMesh(v, f), Error);
}

TEST_CASE("smoothing: zero iterations is the identity") {
  const TriangleMesh m = shapes::icosphere(10, 2);
  const TriangleMesh s = smooth_mesh(m, 0, 0.5);
  CHECK((s.vertices().array() == m.vertices().array()).all());
  CHECK_THROWS_AS(smooth_mesh(m, -1, 0.5), Error);
  CHECK_THROWS_AS(smooth_mesh(m, 1, 1.0), Error);
}

TEST_CASE("smoothing: sphere barely moves") {
  const double r = 10;
  const TriangleMesh m = shapes::icosphere(r, 3);
  const TriangleMesh s = smooth_mesh(m, 10, 0.5);
  double worst = 0;
  for (int v = 0; v < m.num_vertices(); ++v) worst = std::max(worst, (s.vertex(v) - m.vertex(v)).norm());
  CHECK(worst < 0.05 * r);
  CHECK(s.vertices().allFinite());
  CHECK(s.num_faces() == m.num_faces());
  CHECK(s.face_edges().size() == m.face_edges().size());
  CHECK((s.faces().array() == m.faces().array()).all());
}

TEST_CASE("smoothing: thread teeth flatten") {
  const TriangleMesh m = shapes::threaded_cylinder(8, 30, 2, 0.8, 48);
  const TriangleMesh s = smooth_mesh(m, 10, 0.5);
  auto radial_std = [](const TriangleMesh& mesh) {
    std::vector<double> r;
    for (int v = 0; v < mesh.num_vertices(); ++v) {
      const Vec3 p = mesh.vertex(v);
      if (p.z() < 3 || p.z() > 27) continue;  // lateral band away from caps
      r.push_back(p.head<2>().norm());
    }
    double mean = 0;
    for (double x : r) mean += x;
    mean /= r.size();
    double var = 0;
    for (double x : r) var += (x - mean) * (x - mean);
    return std::sqrt(var / r.size());
  };
  CHECK(radial_std(s) < radial_std(m));
}

TEST_CASE("cast_ray basics on the unit cube") {
  const TriangleMesh cube = shapes::box(Vec3(0, 0, 0), Vec3(1, 1, 1));
  const RayAccelerator accel(cube);
  const auto hits = accel.cast_ray(Vec3(0.5, 0.5, 0.5), Vec3::UnitX());
  REQUIRE(!hits.empty());
  CHECK(hits.front().distance == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cube.normal(hits.front().face).x() == doctest::Approx(1.0));
  for (const auto& h : hits)
    CHECK((h.point - (Vec3(0.5, 0.5, 0.5) + h.distance * Vec3::UnitX())).norm() < 1e-6);
  CHECK(accel.cast_ray(Vec3(3, 0.5, 0.5), Vec3::UnitX()).empty());
  CHECK(!accel.first_hit(Vec3(3, 0.5, 0.5), Vec3::UnitX()).has_value());
}

TEST_CASE("cast_ray agrees with brute force on random rays") {
  // 496 faces: wavy surface of revolution.
  std::vector<Vec2> prof{{0, 0}};
  for (int i = 0; i <= 6; ++i) prof.emplace_back(6 + 2 * std::sin(i), 4.0 * i);
  prof.emplace_back(0, 24);
  const TriangleMesh mesh = shapes::revolve(prof, 31);
  CHECK(mesh.num_faces() > 400);
  const RayAccelerator accel(mesh);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 o(12 * u(rng), 12 * u(rng), 12 + 16 * u(rng));
    Vec3 d(u(rng), u(rng), u(rng));
    d.normalize();
    const std::optional<int> ignore = i % 7 == 0 ? std::optional<int>(i % mesh.num_faces()) : std::nullopt;
    const auto a = accel.cast_ray(o, d, ignore);
    const auto b = cast_ray_brute_force(mesh, o, d, ignore);
    bool same = a.size() == b.size();
    for (std::size_t k = 0; same && k < a.size(); ++k)
      same = a[k].face == b[k].face && a[k].distance == b[k].distance;
    if (!same) ++mismatches;
    const auto first = accel.first_hit(o, d, 0, ignore);
    if (!b.empty()) {
      // first hit with distance > 0
      auto it = std::find_if(b.begin(), b.end(), [](const RayHit& h) { return h.distance > 0; });
      if (it != b.end()) {
        REQUIRE(first.has_value());
        CHECK(first->face == it->face);
      }
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("convex hull volume: cube, interior points, degenerate") {
  std::vector<Vec3> pts;
  for (int i = 0; i < 8; ++i) pts.emplace_back(i & 1, (i >> 1) & 1, (i >> 2) & 1);
  CHECK(convex_hull_volume(pts) == doctest::Approx(1.0).epsilon(1e-12));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 200; ++i) pts.emplace_back(u(rng), u(rng), u(rng));
  const ConvexHull hull = convex_hull(pts);
  CHECK(hull.volume == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hull.vertices.size() == 8);

  std::vector<Vec3> flat{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0.3, 0.2, 0}};
  try {
    convex_hull_volume(flat);
    FAIL("expected degenerate hull");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateHull);
  }
  std::vector<Vec3> line{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {3, 3, 3}};
  CHECK_THROWS_AS(convex_hull_volume(line), Error);
  CHECK_THROWS_AS(convex_hull_volume(std::vector<Vec3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), Error);
}

TEST_CASE("convex hull of dense sphere sample approaches the ball volume") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0, 1);
  std::vector<Vec3> pts;
  for (int i = 0; i < 10000; ++i) pts.push_back(10 * Vec3(n(rng), n(rng), n(rng)).normalized());
  const double v = convex_hull_volume(pts);
  const double exact = 4.0 / 3.0 * kPi * 1000;
  CHECK(v < exact);
  CHECK(std::abs(v - exact) / exact < 0.02);
}

TEST_CASE("convex hull volume is rigid invariant and monotone under inclusion") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 60; ++i) pts.emplace_back(20 * u(rng), 5 * u(rng), 9 * u(rng));
    Rigid t = Rigid::Identity();
    t.linear() = Eigen::AngleAxisd(3 * u(rng), Vec3(u(rng), u(rng), u(rng)).normalized()).toRotationMatrix();
    t.translation() = Vec3(100 * u(rng), 100 * u(rng), 100 * u(rng));
    std::vector<Vec3> moved;
    for (const auto& p : pts) moved.push_back(t * p);
    const double a = convex_hull_volume(pts);
    const double b = convex_hull_volume(moved);
    CHECK(std::abs(a - b) / a < 1e-9);
    double prev = a;
    for (int extra = 0; extra < 5; ++extra) {
      pts.emplace_back(25 * u(rng), 7 * u(rng), 12 * u(rng));
      const double next = convex_hull_volume(pts);
      CHECK(next >= prev * (1 - 1e-12));
      prev = next;
    }
  }
}
