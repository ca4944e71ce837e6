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

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

namespace gripforge {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Rigid3 = Eigen::Transform<Scalar, 3, Eigen::Isometry>;

using Vec2 = Vector2<double>;
using Vec3 = Vector3<double>;
using Mat3 = Matrix3<double>;
using Rigid = Rigid3<double>;

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Angle between two vectors in [0, pi], robust near 0 and pi.
template <typename Derived1, typename Derived2>
typename Derived1::Scalar angle_between(const Eigen::MatrixBase<Derived1>& a,
                                        const Eigen::MatrixBase<Derived2>& b) {
  using std::atan2;
  return atan2(a.cross(b).norm(), a.dot(b));
}

/// Any unit vector orthogonal to `n` (n must be unit length).
template <typename Derived>
Vector3<typename Derived::Scalar> any_orthonormal(const Eigen::MatrixBase<Derived>& n) {
  using Scalar = typename Derived::Scalar;
  const Vector3<Scalar> helper = std::abs(n.x()) < Scalar(0.9) ? Vector3<Scalar>::UnitX()
                                                               : Vector3<Scalar>::UnitY();
  return n.cross(helper).normalized();
}

/// Axis-aligned box [lo, hi].
template <typename Scalar>
struct AlignedBox {
  Vector3<Scalar> lo = Vector3<Scalar>::Constant(std::numeric_limits<Scalar>::infinity());
  Vector3<Scalar> hi = Vector3<Scalar>::Constant(-std::numeric_limits<Scalar>::infinity());

  void extend(const Vector3<Scalar>& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  void extend(const AlignedBox& b) {
    lo = lo.cwiseMin(b.lo);
    hi = hi.cwiseMax(b.hi);
  }
  bool empty() const { return (lo.array() > hi.array()).any(); }
  Vector3<Scalar> center() const { return Scalar(0.5) * (lo + hi); }
  Vector3<Scalar> diagonal() const { return hi - lo; }
  bool contains(const Vector3<Scalar>& p) const {
    return (lo.array() <= p.array()).all() && (p.array() <= hi.array()).all();
  }
  bool overlaps(const AlignedBox& b) const {
    return (lo.array() <= b.hi.array()).all() && (b.lo.array() <= hi.array()).all();
  }
  AlignedBox inflated(Scalar pad) const {
    AlignedBox r = *this;
    r.lo.array() -= pad;
    r.hi.array() += pad;
    return r;
  }
};

/// Ray/triangle intersection (Moller-Trumbore, double sided). Returns the ray
/// parameter t >= 0 of the hit, if any.
template <typename Scalar>
std::optional<Scalar> intersect_ray_triangle(const Vector3<Scalar>& origin,
                                             const Vector3<Scalar>& dir,
                                             const Vector3<Scalar>& a,
                                             const Vector3<Scalar>& b,
                                             const Vector3<Scalar>& c) {
  const Vector3<Scalar> e1 = b - a;
  const Vector3<Scalar> e2 = c - a;
  const Vector3<Scalar> p = dir.cross(e2);
  const Scalar det = e1.dot(p);
  // Scale-aware parallel test.
  const Scalar scale = e1.norm() * e2.norm();
  if (std::abs(det) <= std::numeric_limits<Scalar>::epsilon() * scale) return std::nullopt;
  const Scalar inv = Scalar(1) / det;
  const Vector3<Scalar> s = origin - a;
  const Scalar u = s.dot(p) * inv;
  if (u < Scalar(0) || u > Scalar(1)) return std::nullopt;
  const Vector3<Scalar> q = s.cross(e1);
  const Scalar v = dir.dot(q) * inv;
  if (v < Scalar(0) || u + v > Scalar(1)) return std::nullopt;
  const Scalar t = e2.dot(q) * inv;
  if (t < Scalar(0)) return std::nullopt;
  return t;
}

/// Slab test; returns true if the ray [0, tmax] touches the box.
template <typename Scalar>
bool ray_hits_box(const Vector3<Scalar>& origin, const Vector3<Scalar>& inv_dir,
                  const AlignedBox<Scalar>& box, Scalar tmax) {
  Scalar t0 = 0, t1 = tmax;
  for (int k = 0; k < 3; ++k) {
    Scalar ta = (box.lo[k] - origin[k]) * inv_dir[k];
    Scalar tb = (box.hi[k] - origin[k]) * inv_dir[k];
    if (std::isnan(ta) || std::isnan(tb)) {
      // Direction component is zero and origin lies on a slab plane.
      if (origin[k] < box.lo[k] || origin[k] > box.hi[k]) return false;
      continue;
    }
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

namespace detail {

template <typename Scalar>
bool separated_on_axis(const Vector3<Scalar>& axis, const Vector3<Scalar>& v0,
                       const Vector3<Scalar>& v1, const Vector3<Scalar>& v2,
                       const Vector3<Scalar>& half) {
  const Scalar p0 = axis.dot(v0);
  const Scalar p1 = axis.dot(v1);
  const Scalar p2 = axis.dot(v2);
  const Scalar r = half.x() * std::abs(axis.x()) + half.y() * std::abs(axis.y()) +
                   half.z() * std::abs(axis.z());
  const Scalar lo = std::min({p0, p1, p2});
  const Scalar hi = std::max({p0, p1, p2});
  return lo > r || hi < -r;
}

}  // namespace detail

/// Separating-axis overlap test between a solid axis-aligned box centred at
/// the origin with the given half extents and a triangle (closed sets: touching
/// counts as overlap).
template <typename Scalar>
bool triangle_box_overlap(const Vector3<Scalar>& half, const Vector3<Scalar>& v0,
                          const Vector3<Scalar>& v1, const Vector3<Scalar>& v2) {
  // Box face normals.
  for (int k = 0; k < 3; ++k) {
    const Scalar lo = std::min({v0[k], v1[k], v2[k]});
    const Scalar hi = std::max({v0[k], v1[k], v2[k]});
    if (lo > half[k] || hi < -half[k]) return false;
  }
  const Vector3<Scalar> e0 = v1 - v0;
  const Vector3<Scalar> e1 = v2 - v1;
  const Vector3<Scalar> e2 = v0 - v2;
  // Triangle normal.
  const Vector3<Scalar> n = e0.cross(e1);
  if (n.squaredNorm() > Scalar(0) && detail::separated_on_axis(n, v0, v1, v2, half)) return false;
  // Edge cross products.
  const std::array<Vector3<Scalar>, 3> edges{e0, e1, e2};
  for (const auto& e : edges) {
    for (int k = 0; k < 3; ++k) {
      const Vector3<Scalar> axis = Vector3<Scalar>::Unit(k).cross(e);
      if (axis.squaredNorm() == Scalar(0)) continue;
      if (detail::separated_on_axis(axis, v0, v1, v2, half)) return false;
    }
  }
  return true;
}

/// Oriented box: centre, rotation whose columns are the box axes, half extents.
template <typename Scalar>
struct OrientedBox {
  Vector3<Scalar> center = Vector3<Scalar>::Zero();
  Matrix3<Scalar> axes = Matrix3<Scalar>::Identity();
  Vector3<Scalar> half = Vector3<Scalar>::Zero();

  Scalar volume() const { return Scalar(8) * half.prod(); }

  Vector3<Scalar> to_local(const Vector3<Scalar>& p) const {
    return axes.transpose() * (p - center);
  }

  AlignedBox<Scalar> bounds() const {
    AlignedBox<Scalar> b;
    const Vector3<Scalar> ext = axes.cwiseAbs() * half;
    b.lo = center - ext;
    b.hi = center + ext;
    return b;
  }

  bool contains(const Vector3<Scalar>& p, Scalar slack = Scalar(0)) const {
    return (to_local(p).cwiseAbs().array() <= half.array() + slack).all();
  }

  OrientedBox transformed(const Rigid3<Scalar>& t) const {
    OrientedBox r;
    r.center = t * center;
    r.axes = t.linear() * axes;
    r.half = half;
    return r;
  }
};

template <typename Scalar>
bool triangle_obb_overlap(const OrientedBox<Scalar>& box, const Vector3<Scalar>& a,
                          const Vector3<Scalar>& b, const Vector3<Scalar>& c) {
  return triangle_box_overlap<Scalar>(box.half, box.to_local(a), box.to_local(b),
                                      box.to_local(c));
}

/// OBB vs AABB separating-axis test (15 axes).
template <typename Scalar>
bool obb_aabb_overlap(const OrientedBox<Scalar>& box, const AlignedBox<Scalar>& aabb) {
  const Vector3<Scalar> ac = aabb.center();
  const Vector3<Scalar> ah = Scalar(0.5) * aabb.diagonal();
  const Matrix3<Scalar>& R = box.axes;  // columns: box axes in aabb frame
  const Vector3<Scalar> t = box.center - ac;
  const Matrix3<Scalar> absR = R.cwiseAbs().array() + Scalar(1e-12);
  for (int i = 0; i < 3; ++i) {
    const Scalar rb = absR.row(i).dot(box.half);
    if (std::abs(t[i]) > ah[i] + rb) return false;
  }
  for (int j = 0; j < 3; ++j) {
    const Scalar ra = absR.col(j).dot(ah);
    if (std::abs(R.col(j).dot(t)) > ra + box.half[j]) return false;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Vector3<Scalar> axis = Vector3<Scalar>::Unit(i).cross(R.col(j));
      if (axis.squaredNorm() < Scalar(1e-18)) continue;
      const Scalar ra = ah.x() * std::abs(axis.x()) + ah.y() * std::abs(axis.y()) +
                        ah.z() * std::abs(axis.z());
      const Scalar rb = box.half[0] * std::abs(axis.dot(R.col(0))) +
                        box.half[1] * std::abs(axis.dot(R.col(1))) +
                        box.half[2] * std::abs(axis.dot(R.col(2)));
      if (std::abs(axis.dot(t)) > (ra + rb) * (Scalar(1) + Scalar(1e-12))) return false;
    }
  }
  return true;
}

/// True if `m` is orthonormal with det +1 within `tol`.
template <typename Derived>
bool is_rotation(const Eigen::MatrixBase<Derived>& m, double tol = 1e-9) {
  const auto eye = Matrix3<typename Derived::Scalar>::Identity();
  return (m.transpose() * m - eye).cwiseAbs().maxCoeff() <= tol &&
         std::abs(m.determinant() - 1) <= tol;
}

/// Linear interpolation of rigid transforms (lerp translation, slerp rotation).
template <typename Scalar>
Rigid3<Scalar> interpolate(const Rigid3<Scalar>& a, const Rigid3<Scalar>& b, Scalar s) {
  const Eigen::Quaternion<Scalar> qa(a.linear());
  const Eigen::Quaternion<Scalar> qb(b.linear());
  Rigid3<Scalar> r = Rigid3<Scalar>::Identity();
  r.linear() = qa.slerp(s, qb).toRotationMatrix();
  r.translation() = (Scalar(1) - s) * a.translation() + s * b.translation();
  return r;
}

}  // namespace gripforge
