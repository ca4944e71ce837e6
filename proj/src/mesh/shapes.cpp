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

#include "gripforge/mesh/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gripforge/core/error.hpp"
#include "gripforge/mesh/io.hpp"

namespace gripforge::shapes {

namespace {

struct SoupBuilder {
  std::vector<Vec3> pos;
  std::vector<std::array<int, 3>> tris;

  int add(const Vec3& p) {
    pos.push_back(p);
    return static_cast<int>(pos.size()) - 1;
  }
  void tri(int a, int b, int c) { tris.push_back({a, b, c}); }
  void quad(int a, int b, int c, int d) {
    tri(a, b, c);
    tri(a, c, d);
  }

  TriangleMesh finish(bool orient_outward = true) {
    if (orient_outward) {
      double vol = 0;
      for (const auto& t : tris) vol += pos[t[0]].dot(pos[t[1]].cross(pos[t[2]]));
      if (vol < 0)
        for (auto& t : tris) std::swap(t[1], t[2]);
    }
    double scale = 0;
    for (const auto& p : pos) scale = std::max(scale, p.cwiseAbs().maxCoeff());
    return build_mesh(pos, tris, 1e-9 * std::max(scale, 1.0)).mesh;
  }
};

int pieces(double length, double max_edge) {
  if (max_edge <= 0) return 1;
  return std::max(1, static_cast<int>(std::ceil(length / max_edge - 1e-9)));
}

}  // namespace

TriangleMesh box(const Vec3& lo, const Vec3& hi, double max_edge) {
  if (!((hi - lo).array() > 0).all()) throw Error(ErrorCode::kInvalidArgument, "box needs positive size");
  SoupBuilder sb;
  const Vec3 size = hi - lo;
  // Each face: origin corner, two spanning edges with u x v outward.
  auto face = [&](const Vec3& o, const Vec3& u, const Vec3& v) {
    const int nu = pieces(u.norm(), max_edge), nv = pieces(v.norm(), max_edge);
    std::vector<int> id((nu + 1) * (nv + 1));
    for (int i = 0; i <= nu; ++i)
      for (int j = 0; j <= nv; ++j)
        id[i * (nv + 1) + j] = sb.add(o + u * (double(i) / nu) + v * (double(j) / nv));
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nv; ++j)
        sb.quad(id[i * (nv + 1) + j], id[(i + 1) * (nv + 1) + j], id[(i + 1) * (nv + 1) + j + 1],
                id[i * (nv + 1) + j + 1]);
  };
  const Vec3 ex(size.x(), 0, 0), ey(0, size.y(), 0), ez(0, 0, size.z());
  face(lo, ey, ex);            // -z
  face(lo + ez, ex, ey);       // +z
  face(lo, ex, ez);            // -y
  face(lo + ey, ez, ex);       // +y
  face(lo, ez, ey);            // -x
  face(lo + ex, ey, ez);       // +x
  return sb.finish(false);
}

TriangleMesh box(const Vec3& size) { return box(-0.5 * size, 0.5 * size); }

TriangleMesh revolve(const std::vector<Vec2>& profile_in, int sides, double max_edge) {
  if (profile_in.size() < 2 || sides < 3)
    throw Error(ErrorCode::kInvalidArgument, "revolve needs >= 2 profile points and >= 3 sides");
  const bool capped = profile_in.front().x() == 0 && profile_in.back().x() == 0;
  std::vector<Vec2> profile;
  const std::size_t segs = capped ? profile_in.size() - 1 : profile_in.size();
  for (std::size_t i = 0; i < segs; ++i) {
    const Vec2 a = profile_in[i];
    const Vec2 b = profile_in[(i + 1) % profile_in.size()];
    const int n = pieces((b - a).norm(), max_edge);
    for (int k = 0; k < n; ++k) profile.push_back(a + (b - a) * (double(k) / n));
  }
  if (capped) profile.push_back(profile_in.back());

  SoupBuilder sb;
  std::vector<std::vector<int>> rings;
  for (const auto& p : profile) {
    std::vector<int> ring;
    if (p.x() == 0) {
      ring.push_back(sb.add(Vec3(0, 0, p.y())));
    } else {
      for (int j = 0; j < sides; ++j) {
        const double a = 2 * kPi * j / sides;
        ring.push_back(sb.add(Vec3(p.x() * std::cos(a), p.x() * std::sin(a), p.y())));
      }
    }
    rings.push_back(std::move(ring));
  }
  const std::size_t n = rings.size();
  const std::size_t links = capped ? n - 1 : n;
  for (std::size_t i = 0; i < links; ++i) {
    const auto& r0 = rings[i];
    const auto& r1 = rings[(i + 1) % n];
    if (r0.size() == 1 && r1.size() == 1) continue;
    for (int j = 0; j < sides; ++j) {
      const int jn = (j + 1) % sides;
      if (r0.size() == 1)
        sb.tri(r0[0], r1[jn], r1[j]);
      else if (r1.size() == 1)
        sb.tri(r0[j], r0[jn], r1[0]);
      else
        sb.quad(r0[j], r0[jn], r1[jn], r1[j]);
    }
  }
  return sb.finish();
}

TriangleMesh cylinder(double radius, double z0, double z1, int sides, double max_edge) {
  return revolve({{0, z0}, {radius, z0}, {radius, z1}, {0, z1}}, sides, max_edge);
}

TriangleMesh stepped_shaft(const std::vector<Vec2>& steps, double z0, int sides, double max_edge) {
  std::vector<Vec2> profile{{0, z0}};
  double z = z0;
  for (const auto& s : steps) {
    profile.emplace_back(s.x(), z);
    z += s.y();
    profile.emplace_back(s.x(), z);
  }
  profile.emplace_back(0, z);
  return revolve(profile, sides, max_edge);
}

TriangleMesh ring(double r_in, double r_out, double z0, double z1, int sides, double max_edge) {
  if (!(r_in > 0 && r_out > r_in)) throw Error(ErrorCode::kInvalidArgument, "ring needs 0 < r_in < r_out");
  return revolve({{r_in, z0}, {r_out, z0}, {r_out, z1}, {r_in, z1}}, sides, max_edge);
}

TriangleMesh threaded_cylinder(double radius, double height, double pitch, double depth,
                               int sides) {
  std::vector<Vec2> profile{{0, 0}};
  const int turns = std::max(1, static_cast<int>(std::floor(height / pitch)));
  const double p = height / turns;
  for (int k = 0; k < turns; ++k) {
    profile.emplace_back(radius - depth, k * p);
    profile.emplace_back(radius, (k + 1) * p);
  }
  profile.emplace_back(radius - depth, height);
  profile.emplace_back(0, height);
  return revolve(profile, sides);
}

TriangleMesh icosphere(double radius, int level) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v{{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                      {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v) p.normalize();
  std::vector<std::array<int, 3>> f{{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                    {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                    {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                    {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      const int id = static_cast<int>(v.size()) - 1;
      mid.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(f.size() * 4);
    for (const auto& tr : f) {
      const int a = midpoint(tr[0], tr[1]);
      const int b = midpoint(tr[1], tr[2]);
      const int c = midpoint(tr[2], tr[0]);
      next.push_back({tr[0], a, c});
      next.push_back({tr[1], b, a});
      next.push_back({tr[2], c, b});
      next.push_back({a, b, c});
    }
    f.swap(next);
  }
  for (auto& p : v) p *= radius;
  SoupBuilder sb;
  sb.pos = v;
  sb.tris = f;
  return sb.finish();
}

namespace {

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool inside_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  return cross2(a, b, p) >= 0 && cross2(b, c, p) >= 0 && cross2(c, a, p) >= 0;
}

std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& poly) {
  std::vector<int> idx(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) idx[i] = static_cast<int>(i);
  std::vector<std::array<int, 3>> out;
  while (idx.size() > 3) {
    bool clipped = false;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const int a = idx[(i + idx.size() - 1) % idx.size()], b = idx[i], c = idx[(i + 1) % idx.size()];
      if (cross2(poly[a], poly[b], poly[c]) <= 0) continue;
      bool blocked = false;
      for (int o : idx) {
        if (o == a || o == b || o == c) continue;
        if (inside_triangle(poly[o], poly[a], poly[b], poly[c])) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      out.push_back({a, b, c});
      idx.erase(idx.begin() + static_cast<long>(i));
      clipped = true;
      break;
    }
    if (!clipped) throw Error(ErrorCode::kInvalidArgument, "polygon is not simple and counter-clockwise");
  }
  out.push_back({idx[0], idx[1], idx[2]});
  return out;
}

}  // namespace

TriangleMesh prism(const std::vector<Vec2>& polygon, double z0, double z1) {
  if (polygon.size() < 3 || !(z1 > z0)) throw Error(ErrorCode::kInvalidArgument, "bad prism");
  SoupBuilder sb;
  const int n = static_cast<int>(polygon.size());
  std::vector<int> bottom(n), top(n);
  for (int i = 0; i < n; ++i) {
    bottom[i] = sb.add(Vec3(polygon[i].x(), polygon[i].y(), z0));
    top[i] = sb.add(Vec3(polygon[i].x(), polygon[i].y(), z1));
  }
  for (const auto& t : ear_clip(polygon)) {
    sb.tri(top[t[0]], top[t[1]], top[t[2]]);
    sb.tri(bottom[t[0]], bottom[t[2]], bottom[t[1]]);
  }
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    sb.quad(bottom[i], bottom[j], top[j], top[i]);
  }
  return sb.finish(false);
}

}  // namespace gripforge::shapes
