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

#include "gripforge/mesh/convex_hull.hpp"

#include <algorithm>
#include <unordered_map>

#include "gripforge/core/error.hpp"

namespace gripforge {

namespace {

struct HullFace {
  std::array<int, 3> v;
  Vec3 normal;
  double offset = 0;
  std::vector<int> outside;
  bool alive = true;
};

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

class Quickhull {
 public:
  explicit Quickhull(std::span<const Vec3> pts) : p_(pts) {}

  ConvexHull run() {
    if (p_.size() < 4) throw Error(ErrorCode::kDegenerateHull, "convex hull needs >= 4 points");
    AlignedBox<double> box;
    for (const auto& q : p_) {
      if (!q.allFinite()) throw Error(ErrorCode::kDegenerateHull, "non-finite point");
      box.extend(q);
    }
    const double diag = box.diagonal().norm();
    eps_ = 1e-10 * std::max(diag, 1e-300);
    seed_simplex();
    while (!pending_.empty()) {
      const int f = pending_.back();
      pending_.pop_back();
      if (!faces_[f].alive || faces_[f].outside.empty()) continue;
      expand(f);
    }
    return collect();
  }

 private:
  double dist(const HullFace& f, int i) const { return f.normal.dot(p_[i]) - f.offset; }

  int add_face(int a, int b, int c) {
    HullFace f;
    f.v = {a, b, c};
    const Vec3 n = (p_[b] - p_[a]).cross(p_[c] - p_[a]);
    f.normal = n.normalized();
    f.offset = f.normal.dot(p_[a]);
    const int id = static_cast<int>(faces_.size());
    faces_.push_back(std::move(f));
    for (int k = 0; k < 3; ++k) edges_[edge_key(faces_[id].v[k], faces_[id].v[(k + 1) % 3])] = id;
    return id;
  }

  void seed_simplex() {
    const int n = static_cast<int>(p_.size());
    // Extreme points along the axes; keep the most distant pair.
    std::array<int, 6> ext{};
    for (int k = 0; k < 3; ++k) {
      int lo = 0, hi = 0;
      for (int i = 1; i < n; ++i) {
        if (p_[i][k] < p_[lo][k]) lo = i;
        if (p_[i][k] > p_[hi][k]) hi = i;
      }
      ext[2 * k] = lo;
      ext[2 * k + 1] = hi;
    }
    int i0 = ext[0], i1 = ext[1];
    double best = -1;
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b) {
        const double d = (p_[ext[a]] - p_[ext[b]]).squaredNorm();
        if (d > best) {
          best = d;
          i0 = ext[a];
          i1 = ext[b];
        }
      }
    if (std::sqrt(best) <= eps_) throw Error(ErrorCode::kDegenerateHull, "points coincide");
    const Vec3 dir = (p_[i1] - p_[i0]).normalized();
    int i2 = -1;
    best = -1;
    for (int i = 0; i < n; ++i) {
      const double d = (p_[i] - p_[i0]).cross(dir).norm();
      if (d > best) {
        best = d;
        i2 = i;
      }
    }
    if (best <= eps_) throw Error(ErrorCode::kDegenerateHull, "points are collinear");
    const Vec3 pn = (p_[i1] - p_[i0]).cross(p_[i2] - p_[i0]).normalized();
    int i3 = -1;
    best = -1;
    for (int i = 0; i < n; ++i) {
      const double d = std::abs(pn.dot(p_[i] - p_[i0]));
      if (d > best) {
        best = d;
        i3 = i;
      }
    }
    if (best <= eps_) throw Error(ErrorCode::kDegenerateHull, "points are coplanar");

    interior_ = 0.25 * (p_[i0] + p_[i1] + p_[i2] + p_[i3]);
    if (pn.dot(p_[i3] - p_[i0]) > 0) std::swap(i1, i2);
    // Now i3 lies below plane (i0, i1, i2): that face is outward.
    std::array<int, 4> ids{add_face(i0, i1, i2), add_face(i0, i3, i1), add_face(i1, i3, i2),
                           add_face(i2, i3, i0)};
    for (int i = 0; i < n; ++i) {
      if (i == i0 || i == i1 || i == i2 || i == i3) continue;
      for (int f : ids)
        if (dist(faces_[f], i) > eps_) {
          faces_[f].outside.push_back(i);
          break;
        }
    }
    for (int f : ids) pending_.push_back(f);
  }

  void expand(int seed) {
    const auto& out = faces_[seed].outside;
    int apex = out.front();
    double far = dist(faces_[seed], apex);
    for (int i : out) {
      const double d = dist(faces_[seed], i);
      if (d > far) {
        far = d;
        apex = i;
      }
    }

    // Visible region by flood fill from the seed face.
    std::vector<int> visible{seed};
    std::vector<char> mark(faces_.size(), 0);
    mark[seed] = 1;
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const HullFace& f = faces_[visible[q]];
      for (int k = 0; k < 3; ++k) {
        const int a = f.v[k], b = f.v[(k + 1) % 3];
        auto it = edges_.find(edge_key(b, a));
        if (it == edges_.end()) throw Error(ErrorCode::kDegenerateHull, "hull topology broken");
        const int g = it->second;
        if (mark[g] == 1) continue;
        if (mark[g] == 0 && dist(faces_[g], apex) > eps_) {
          mark[g] = 1;
          visible.push_back(g);
        } else {
          mark[g] = 2;
        }
      }
    }
    std::vector<std::pair<int, int>> horizon;
    for (int fv : visible) {
      const HullFace& f = faces_[fv];
      for (int k = 0; k < 3; ++k) {
        const int a = f.v[k], b = f.v[(k + 1) % 3];
        const int g = edges_.at(edge_key(b, a));
        if (mark[g] != 1) horizon.emplace_back(a, b);
      }
    }

    std::vector<int> orphans;
    for (int fv : visible) {
      HullFace& f = faces_[fv];
      f.alive = false;
      for (int k = 0; k < 3; ++k) edges_.erase(edge_key(f.v[k], f.v[(k + 1) % 3]));
      for (int i : f.outside)
        if (i != apex) orphans.push_back(i);
      f.outside.clear();
      f.outside.shrink_to_fit();
    }
    std::vector<int> created;
    created.reserve(horizon.size());
    for (const auto& [a, b] : horizon) created.push_back(add_face(a, b, apex));
    for (int i : orphans)
      for (int f : created)
        if (dist(faces_[f], i) > eps_) {
          faces_[f].outside.push_back(i);
          break;
        }
    for (int f : created)
      if (!faces_[f].outside.empty()) pending_.push_back(f);
  }

  ConvexHull collect() const {
    ConvexHull hull;
    for (const auto& f : faces_) {
      if (!f.alive) continue;
      hull.faces.push_back(f.v);
      const Vec3 a = p_[f.v[0]] - interior_;
      const Vec3 b = p_[f.v[1]] - interior_;
      const Vec3 c = p_[f.v[2]] - interior_;
      hull.volume += a.dot(b.cross(c)) / 6.0;
      for (int v : f.v) hull.vertices.push_back(v);
    }
    std::sort(hull.vertices.begin(), hull.vertices.end());
    hull.vertices.erase(std::unique(hull.vertices.begin(), hull.vertices.end()),
                        hull.vertices.end());
    return hull;
  }

  std::span<const Vec3> p_;
  double eps_ = 0;
  Vec3 interior_ = Vec3::Zero();
  std::vector<HullFace> faces_;
  std::unordered_map<std::uint64_t, int> edges_;
  std::vector<int> pending_;
};

}  // namespace

ConvexHull convex_hull(std::span<const Vec3> points) { return Quickhull(points).run(); }

double convex_hull_volume(std::span<const Vec3> points) { return convex_hull(points).volume; }

}  // namespace gripforge
