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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "gripforge/core/error.hpp"
#include "gripforge/core/random.hpp"
#include "gripforge/primitives/fitting.hpp"

namespace gripforge {
namespace {

struct Model {
  Vec3 c;  // point on the axis
  Vec3 a;  // unit axis
  double r;
};

double radial(const Model& m, const Vec3& p, Vec3* dir = nullptr) {
  const Vec3 q = p - m.c;
  const Vec3 d = q - q.dot(m.a) * m.a;
  const double n = d.norm();
  if (dir) *dir = n > 0 ? Vec3(d / n) : any_orthonormal(m.a);
  return n;
}

// Two oriented points on a cylinder: the axis is orthogonal to both normals,
// and the normal lines meet on the axis.
std::optional<Model> hypothesis(const Vec3& p1, const Vec3& n1, const Vec3& p2, const Vec3& n2) {
  Vec3 a = n1.cross(n2);
  const double s = a.norm();
  if (s < 1e-3) return std::nullopt;
  a /= s;
  const Vec3 u = n1 - n1.dot(a) * a;
  const Vec3 v = n2 - n2.dot(a) * a;
  // Solve p1 + t1 u = p2 + t2 v in the plane orthogonal to a (least squares).
  Eigen::Matrix<double, 3, 2> A;
  A.col(0) = u;
  A.col(1) = -v;
  const Vec3 rhs = (p2 - p1) - (p2 - p1).dot(a) * a;
  const Eigen::Vector2d t = A.colPivHouseholderQr().solve(rhs);
  Model m{p1 + t[0] * u, a, 0};
  m.r = 0.5 * (radial(m, p1) + radial(m, p2));
  return m;
}

bool is_inlier(const Model& m, const Vec3& p, const Vec3& n, double tol, double cos_tol) {
  Vec3 g;
  const double rho = radial(m, p, &g);
  return std::abs(rho - m.r) <= tol && std::abs(n.dot(g)) >= cos_tol;
}

std::vector<int> collect_inliers(const Model& m, const PointCloud& cloud, double tol, double cos_tol) {
  std::vector<int> in;
  for (int i = 0; i < cloud.size(); ++i)
    if (is_inlier(m, cloud.points[i], cloud.normals[i], tol, cos_tol)) in.push_back(i);
  return in;
}

double cost(const Model& m, const PointCloud& cloud, const std::vector<int>& idx) {
  double s = 0;
  for (int i : idx) {
    const double e = radial(m, cloud.points[i]) - m.r;
    s += e * e;
  }
  return s;
}

// Levenberg-Marquardt on the radial residuals with a local axis/point chart.
Model refine(Model m, const PointCloud& cloud, const std::vector<int>& idx) {
  double mu = 1e-3;
  double current = cost(m, cloud, idx);
  for (int it = 0; it < 100; ++it) {
    const Vec3 u = any_orthonormal(m.a);
    const Vec3 v = m.a.cross(u);
    Eigen::Matrix<double, 5, 5> H = Eigen::Matrix<double, 5, 5>::Zero();
    Eigen::Matrix<double, 5, 1> g = Eigen::Matrix<double, 5, 1>::Zero();
    for (int i : idx) {
      Vec3 dir;
      const Vec3& p = cloud.points[i];
      const double rho = radial(m, p, &dir);
      const double h = (p - m.c).dot(m.a);
      Eigen::Matrix<double, 5, 1> J;
      J << -h * dir.dot(u), -h * dir.dot(v), -dir.dot(u), -dir.dot(v), -1.0;
      H += J * J.transpose();
      g += J * (rho - m.r);
    }
    bool accepted = false;
    for (int tries = 0; tries < 10 && !accepted; ++tries) {
      Eigen::Matrix<double, 5, 5> Hd = H;
      Hd.diagonal() *= (1 + mu);
      const Eigen::Matrix<double, 5, 1> step = Hd.ldlt().solve(-g);
      Model next{m.c + step[2] * u + step[3] * v, (m.a + step[0] * u + step[1] * v).normalized(),
                 m.r + step[4]};
      const double c = cost(next, cloud, idx);
      if (c <= current) {
        const double gain = current - c;
        m = next;
        current = c;
        mu = std::max(mu / 3, 1e-12);
        accepted = true;
        if (step.norm() < 1e-13 * (1 + std::abs(m.r)) || gain <= 1e-30) return m;
      } else {
        mu *= 4;
      }
    }
    if (!accepted) break;
  }
  return m;
}

}  // namespace

double FittedCylinder::surface_distance(const Vec3& p) const {
  return std::abs(radial(Model{point, axis, radius}, p) - radius);
}

std::optional<FittedCylinder> fit_cylinder_ransac(const PointCloud& cloud,
                                                  const CylinderFitParams& params) {
  const int n = cloud.size();
  if (n < 50) throw Error(ErrorCode::kTooFewPoints, "cylinder fitting needs at least 50 points");
  AlignedBox<double> bb;
  for (const auto& p : cloud.points) bb.extend(p);
  const double diag = bb.diagonal().norm();
  const double rmax = params.max_radius_factor * diag;
  const double cos_tol = std::cos(deg2rad(params.normal_tol_deg));
  const double tol = params.distance_tol;

  Rng rng(params.seed);
  std::optional<Model> best;
  int best_count = 0;
  for (int it = 0; it < params.max_iters; ++it) {
    const int i = std::min(n - 1, static_cast<int>(uniform01(rng) * n));
    int j = std::min(n - 2, static_cast<int>(uniform01(rng) * (n - 1)));
    if (j >= i) ++j;
    const auto m = hypothesis(cloud.points[i], cloud.normals[i], cloud.points[j], cloud.normals[j]);
    if (!m || !(m->r >= params.min_radius && m->r <= rmax)) continue;
    int count = 0;
    for (int k = 0; k < n; ++k)
      if (is_inlier(*m, cloud.points[k], cloud.normals[k], tol, cos_tol)) ++count;
    if (count > best_count) {
      best_count = count;
      best = m;
    }
  }
  if (!best || best_count < params.min_inlier_fraction * n) return std::nullopt;

  Model m = *best;
  std::vector<int> in = collect_inliers(m, cloud, tol, cos_tol);
  for (int round = 0; round < 3; ++round) {
    const Model r = refine(m, cloud, in);
    if (!(r.r >= params.min_radius && r.r <= rmax)) break;
    std::vector<int> next = collect_inliers(r, cloud, tol, cos_tol);
    if (next.size() < in.size()) break;
    const bool same = next == in;
    m = r;
    in = std::move(next);
    if (same) break;
  }
  const double fraction = static_cast<double>(in.size()) / n;
  if (fraction < params.min_inlier_fraction) return std::nullopt;

  FittedCylinder out;
  out.axis = m.a;
  out.radius = m.r;
  out.inlier_fraction = fraction;
  out.inliers = in;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  const Vec3 u = any_orthonormal(m.a);
  const Vec3 v = m.a.cross(u);
  std::vector<char> bins(params.coverage_bins, 0);
  for (int i : in) {
    const Vec3 q = cloud.points[i] - m.c;
    const double h = q.dot(m.a);
    lo = std::min(lo, h);
    hi = std::max(hi, h);
    double ang = std::atan2(q.dot(v), q.dot(u));
    if (ang < 0) ang += 2 * kPi;
    const int b = std::min(params.coverage_bins - 1, static_cast<int>(ang / (2 * kPi) * params.coverage_bins));
    bins[b] = 1;
  }
  out.height = hi - lo;
  out.point = m.c + 0.5 * (lo + hi) * m.a;
  const int covered = static_cast<int>(std::count(bins.begin(), bins.end(), 1));
  out.angular_coverage_deg = 360.0 * covered / params.coverage_bins;
  out.lateral_surface_nonempty = out.angular_coverage_deg >= params.nonempty_coverage_deg &&
                                 fraction >= params.nonempty_inlier_fraction;
  return out;
}

}  // namespace gripforge
