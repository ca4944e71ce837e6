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

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "gripforge/core/error.hpp"
#include "gripforge/mesh/convex_hull.hpp"
#include "gripforge/primitives/fitting.hpp"

namespace gripforge {
namespace {

void frame_bounds(std::span<const Vec3> points, const Mat3& axes, Vec3& lo, Vec3& hi) {
  lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  hi = -lo;
  for (const Vec3& p : points) {
    const Vec3 q = axes.transpose() * p;
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
}

// Orthonormal frame whose first axis is n and whose other two realise the
// minimum-area rectangle of the points projected onto the plane orthogonal
// to n. One side of that rectangle is flush with an edge of the projected hull.
std::pair<double, Mat3> face_flush_frame(std::span<const Vec3> pts, const Vec3& n) {
  const Vec3 u = any_orthonormal(n), v = n.cross(u);
  std::vector<Vec2> q(pts.size());
  double nlo = std::numeric_limits<double>::infinity(), nhi = -nlo;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    q[i] = Vec2(pts[i].dot(u), pts[i].dot(v));
    const double h = pts[i].dot(n);
    nlo = std::min(nlo, h);
    nhi = std::max(nhi, h);
  }
  // Monotone chain hull.
  std::sort(q.begin(), q.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Vec2> h(2 * q.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], q[i]) <= 0) --k;
    h[k++] = q[i];
  }
  for (std::size_t i = q.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], q[i]) <= 0) --k;
    h[k++] = q[i];
  }
  h.resize(k > 1 ? k - 1 : k);

  double best = std::numeric_limits<double>::infinity();
  Vec2 best_dir(1, 0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    Vec2 e = h[(i + 1) % h.size()] - h[i];
    if (e.norm() == 0) continue;
    e.normalize();
    const Vec2 p(-e.y(), e.x());
    double alo = std::numeric_limits<double>::infinity(), ahi = -alo, blo = alo, bhi = -alo;
    for (const Vec2& x : h) {
      alo = std::min(alo, x.dot(e));
      ahi = std::max(ahi, x.dot(e));
      blo = std::min(blo, x.dot(p));
      bhi = std::max(bhi, x.dot(p));
    }
    const double area = (ahi - alo) * (bhi - blo);
    if (area < best) {
      best = area;
      best_dir = e;
    }
  }
  Mat3 axes;
  axes.col(0) = n;
  axes.col(1) = best_dir.x() * u + best_dir.y() * v;
  axes.col(2) = n.cross(axes.col(1));
  return {best * (nhi - nlo), axes};
}

}  // namespace

double box_volume_in_frame(std::span<const Vec3> points, const Mat3& axes) {
  Vec3 lo, hi;
  frame_bounds(points, axes, lo, hi);
  return (hi - lo).prod();
}

FittedBox fit_oriented_box(std::span<const Vec3> points) {
  const ConvexHull hull = convex_hull(points);
  std::vector<Vec3> hv;
  hv.reserve(hull.vertices.size());
  for (int i : hull.vertices) hv.push_back(points[i]);

  Vec3 mean = Vec3::Zero();
  for (const Vec3& p : hv) mean += p;
  mean /= static_cast<double>(hv.size());
  Mat3 cov = Mat3::Zero();
  for (const Vec3& p : hv) cov += (p - mean) * (p - mean).transpose();
  Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
  Mat3 axes;
  for (int k = 0; k < 3; ++k) axes.col(k) = eig.eigenvectors().col(2 - k);  // descending
  if (axes.determinant() < 0) axes.col(2) = -axes.col(2);

  double best = box_volume_in_frame(hv, axes);

  // Frames flush with a hull face.
  std::vector<Vec3> normals;
  for (const auto& f : hull.faces) {
    const Vec3 n = (points[f[1]] - points[f[0]]).cross(points[f[2]] - points[f[0]]).normalized();
    bool seen = false;
    for (const Vec3& m : normals)
      if (std::abs(m.dot(n)) > 1 - 1e-9) {
        seen = true;
        break;
      }
    if (seen || !n.allFinite()) continue;
    normals.push_back(n);
    const auto [v, frame] = face_flush_frame(hv, n);
    if (v < best * (1 - 1e-12)) {
      best = v;
      axes = frame;
    }
  }

  for (int pass = 0; pass < 10; ++pass) {
    bool improved = false;
    for (int k = 0; k < 3; ++k) {
      Mat3 best_axes = axes;
      for (int deg = -15; deg <= 15; ++deg) {
        if (deg == 0) continue;
        const Mat3 r = Eigen::AngleAxisd(deg2rad(deg), axes.col(k)).toRotationMatrix() * axes;
        const double v = box_volume_in_frame(hv, r);
        if (v < best * (1 - 1e-12)) {
          best = v;
          best_axes = r;
          improved = true;
        }
      }
      axes = best_axes;
    }
    if (!improved) break;
  }
  // Re-orthonormalise after repeated rotations.
  const Eigen::HouseholderQR<Mat3> qr(axes);
  Mat3 q = qr.householderQ();
  for (int k = 0; k < 3; ++k)
    if (q.col(k).dot(axes.col(k)) < 0) q.col(k) = -q.col(k);

  Vec3 lo, hi;
  frame_bounds(points, q, lo, hi);
  FittedBox out;
  out.box.axes = q;
  out.box.center = q * (0.5 * (lo + hi));
  out.box.half = 0.5 * (hi - lo);
  return out;
}

std::array<bool, 6> detect_box_face_emptiness(const PointCloud& cloud, const FittedBox& fb,
                                              const EmptinessParams& params) {
  const auto& box = fb.box;
  const int g = params.grid;
  const double cos_tol = std::cos(deg2rad(params.normal_tol_deg));
  std::array<std::vector<char>, 6> cells;
  for (auto& c : cells) c.assign(g * g, 0);
  for (int i = 0; i < cloud.size(); ++i) {
    const Vec3 q = box.to_local(cloud.points[i]);
    const Vec3 n = box.axes.transpose() * cloud.normals[i];
    for (int face = 0; face < 6; ++face) {
      const int k = face / 2;
      const double sign = face % 2 ? 1.0 : -1.0;
      if (std::abs(sign * q[k] - box.half[k]) > params.shell_tol) continue;
      if (sign * n[k] < cos_tol) continue;
      const int a = (k + 1) % 3, b = (k + 2) % 3;
      const double sa = 2 * box.half[a], sb = 2 * box.half[b];
      if (!(sa > 0 && sb > 0)) continue;
      const double ua = (q[a] + box.half[a]) / sa, ub = (q[b] + box.half[b]) / sb;
      if (ua < 0 || ua > 1 || ub < 0 || ub > 1) continue;
      const int ia = std::min(g - 1, static_cast<int>(ua * g));
      const int ib = std::min(g - 1, static_cast<int>(ub * g));
      cells[face][ia * g + ib] = 1;
    }
  }
  std::array<bool, 6> out{};
  for (int face = 0; face < 6; ++face) {
    const int filled = static_cast<int>(std::count(cells[face].begin(), cells[face].end(), 1));
    out[face] = filled >= params.coverage_threshold * g * g;
  }
  return out;
}

}  // namespace gripforge
