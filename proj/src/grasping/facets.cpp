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

#include "gripforge/grasping/facets.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "gripforge/core/geometry.hpp"

namespace gripforge {
namespace {

void finish(const TriangleMesh& mesh, PlanarFacet& f, const Vec3& fallback) {
  std::sort(f.faces.begin(), f.faces.end());
  Vec3 n = Vec3::Zero(), c = Vec3::Zero();
  double a = 0;
  for (int i : f.faces) {
    n += mesh.area(i) * mesh.normal(i);
    c += mesh.area(i) * mesh.centroid(i);
    a += mesh.area(i);
  }
  f.normal = n.norm() > 1e-12 * a ? Vec3(n.normalized()) : fallback;
  f.point = c / a;
  f.area = a;
}

using Poly = std::vector<Vec2>;

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(const Poly& p) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += cross2(p[i], p[(i + 1) % p.size()]);
  return 0.5 * s;
}

// Sutherland-Hodgman clip of `subject` by the convex CCW polygon `clip`.
Poly clip_convex(Poly subject, const Poly& clip) {
  for (std::size_t e = 0; e < clip.size() && !subject.empty(); ++e) {
    const Vec2 a = clip[e], b = clip[(e + 1) % clip.size()];
    const auto side = [&](const Vec2& p) { return cross2(b - a, p - a); };
    Poly out;
    for (std::size_t i = 0; i < subject.size(); ++i) {
      const Vec2 p = subject[i], q = subject[(i + 1) % subject.size()];
      const double sp = side(p), sq = side(q);
      if (sp >= 0) out.push_back(p);
      if ((sp >= 0) != (sq >= 0)) out.push_back(p + (q - p) * (sp / (sp - sq)));
    }
    subject = std::move(out);
  }
  return subject;
}

struct Tri2 {
  Poly p;
  Vec2 lo, hi;
};

std::vector<Tri2> project(const TriangleMesh& mesh, const PlanarFacet& f, const Vec3& e1, const Vec3& e2) {
  std::vector<Tri2> out;
  for (int i : f.faces) {
    Tri2 t;
    for (int k = 0; k < 3; ++k) t.p.push_back(Vec2(mesh.corner(i, k).dot(e1), mesh.corner(i, k).dot(e2)));
    if (signed_area(t.p) < 0) std::swap(t.p[1], t.p[2]);
    t.lo = t.p[0].cwiseMin(t.p[1]).cwiseMin(t.p[2]);
    t.hi = t.p[0].cwiseMax(t.p[1]).cwiseMax(t.p[2]);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

std::vector<PlanarFacet> planar_cluster(const TriangleMesh& mesh, std::span<const int> faces,
                                        double angle_tol_deg) {
  const double tol = deg2rad(angle_tol_deg);
  std::vector<int> sorted(faces.begin(), faces.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<char> member(mesh.num_faces(), 0), taken(mesh.num_faces(), 0);
  for (int f : sorted) member[f] = 1;

  std::vector<PlanarFacet> out;
  std::vector<int> mark(mesh.num_faces(), -1);
  int stamp = 0;
  for (int seed : sorted) {
    if (taken[seed]) continue;
    const Vec3 ns = mesh.normal(seed);
    double accept = tol;
    PlanarFacet facet;
    for (;;) {
      ++stamp;
      facet = PlanarFacet{};
      std::deque<int> q{seed};
      mark[seed] = stamp;
      while (!q.empty()) {
        const int f = q.front();
        q.pop_front();
        facet.faces.push_back(f);
        for (int g : mesh.face_neighbors()[f]) {
          if (!member[g] || taken[g] || mark[g] == stamp) continue;
          if (angle_between(mesh.normal(g), ns) > accept) continue;
          mark[g] = stamp;
          q.push_back(g);
        }
      }
      finish(mesh, facet, ns);
      bool ok = true;
      for (int f : facet.faces)
        if (angle_between(mesh.normal(f), facet.normal) > tol) {
          ok = false;
          break;
        }
      if (ok) break;
      accept *= 0.9;
    }
    for (int f : facet.faces) taken[f] = 1;
    out.push_back(std::move(facet));
  }
  return out;
}

std::vector<FacetPair> find_parallel_facet_pairs(const TriangleMesh& mesh,
                                                 const std::vector<PlanarFacet>& facets,
                                                 const FacetPairParams& params) {
  const double cos_tol = std::cos(deg2rad(params.angle_tol_deg));
  const double min_overlap = 1e-9 * std::pow(mesh.bbox_diagonal(), 2);
  std::vector<FacetPair> out;
  const int n = static_cast<int>(facets.size());
  for (int i = 0; i < n; ++i) {
    if (facets[i].area < params.min_area) continue;
    for (int j = i + 1; j < n; ++j) {
      if (facets[j].area < params.min_area) continue;
      const Vec3& ni = facets[i].normal;
      const Vec3& nj = facets[j].normal;
      if (ni.dot(nj) > -cos_tol) continue;
      const Vec3 d = (ni - nj).normalized();
      const double sep = (facets[i].point - facets[j].point).dot(d);
      if (!(sep > 0) || sep > params.max_width) continue;

      const Vec3 e1 = any_orthonormal(d), e2 = d.cross(e1);
      const auto ti = project(mesh, facets[i], e1, e2);
      const auto tj = project(mesh, facets[j], e1, e2);
      double area = 0;
      Vec2 moment = Vec2::Zero();
      for (const Tri2& a : ti)
        for (const Tri2& b : tj) {
          if ((a.hi.array() < b.lo.array()).any() || (b.hi.array() < a.lo.array()).any()) continue;
          const Poly p = clip_convex(a.p, b.p);
          if (p.size() < 3) continue;
          for (std::size_t k = 1; k + 1 < p.size(); ++k) {
            const double w = 0.5 * cross2(p[k] - p[0], p[k + 1] - p[0]);
            area += w;
            moment += w * (p[0] + p[k] + p[k + 1]) / 3.0;
          }
        }
      if (!(area > min_overlap)) continue;
      const Vec2 c2 = moment / area;
      const Vec3 mid = c2.x() * e1 + c2.y() * e2 + 0.5 * (facets[i].point + facets[j].point).dot(d) * d;

      FacetPair p;
      p.a = i;
      p.b = j;
      p.closing = d;
      // Along d onto each facet plane.
      p.contact_a = mid + ((facets[i].point - mid).dot(ni) / d.dot(ni)) * d;
      p.contact_b = mid + ((facets[j].point - mid).dot(nj) / d.dot(nj)) * d;
      p.width = (p.contact_a - p.contact_b).dot(d);
      if (!(p.width > 0) || p.width > params.max_width) continue;
      p.overlap_area = area;
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace gripforge
