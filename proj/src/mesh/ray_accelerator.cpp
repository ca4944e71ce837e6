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

#include "gripforge/mesh/ray_accelerator.hpp"

#include <algorithm>
#include <numeric>

namespace gripforge {

namespace {

constexpr int kLeafSize = 4;

void sort_hits(std::vector<RayHit>& hits) {
  std::sort(hits.begin(), hits.end(), [](const RayHit& a, const RayHit& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.face < b.face;
  });
}

}  // namespace

RayAccelerator::RayAccelerator(const TriangleMesh& mesh) : mesh_(&mesh) {
  const int nf = mesh.num_faces();
  order_.resize(nf);
  std::iota(order_.begin(), order_.end(), 0);
  std::vector<Vec3> centroids(nf);
  for (int f = 0; f < nf; ++f) centroids[f] = mesh.centroid(f);
  nodes_.reserve(2 * static_cast<std::size_t>(nf / kLeafSize + 1));
  build(0, nf, centroids);
}

int RayAccelerator::build(int begin, int end, std::vector<Vec3>& centroids) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  AlignedBox<double> box, cbox;
  for (int i = begin; i < end; ++i) {
    const int f = order_[i];
    for (int k = 0; k < 3; ++k) box.extend(mesh_->corner(f, k));
    cbox.extend(centroids[f]);
  }
  // Pad so that boundary-grazing rays are never culled by rounding.
  const double pad = 1e-9 * (box.diagonal().norm() + 1.0);
  nodes_[id].box = box.inflated(pad);
  if (end - begin <= kLeafSize) {
    nodes_[id].begin = begin;
    nodes_[id].end = end;
    return id;
  }
  int axis = 0;
  cbox.diagonal().maxCoeff(&axis);
  const int mid = (begin + end) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) {
                     return centroids[a][axis] != centroids[b][axis]
                                ? centroids[a][axis] < centroids[b][axis]
                                : a < b;
                   });
  const int left = build(begin, mid, centroids);
  const int right = build(mid, end, centroids);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

template <typename Visit>
void RayAccelerator::traverse(const Vec3& origin, const Vec3& direction, Visit&& visit) const {
  if (nodes_.empty()) return;
  const Vec3 inv = direction.cwiseInverse();
  int stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (!ray_hits_box(origin, inv, node.box, visit.limit())) continue;
    if (node.left < 0) {
      for (int i = node.begin; i < node.end; ++i) visit(order_[i]);
    } else {
      stack[top++] = node.right;
      stack[top++] = node.left;
    }
  }
}

std::vector<RayHit> RayAccelerator::cast_ray(const Vec3& origin, const Vec3& direction,
                                             std::optional<int> ignore_face) const {
  struct Collect {
    const RayAccelerator* self;
    const Vec3& o;
    const Vec3& d;
    std::optional<int> ignore;
    std::vector<RayHit> hits;
    double limit() const { return std::numeric_limits<double>::infinity(); }
    void operator()(int f) {
      if (ignore && *ignore == f) return;
      const auto& m = *self->mesh_;
      if (auto t = intersect_ray_triangle(o, d, m.corner(f, 0), m.corner(f, 1), m.corner(f, 2)))
        hits.push_back({*t, f, o + *t * d});
    }
  } collect{this, origin, direction, ignore_face, {}};
  traverse(origin, direction, collect);
  sort_hits(collect.hits);
  return std::move(collect.hits);
}

std::optional<RayHit> RayAccelerator::first_hit(const Vec3& origin, const Vec3& direction,
                                                double min_distance,
                                                std::optional<int> ignore_face) const {
  struct Closest {
    const RayAccelerator* self;
    const Vec3& o;
    const Vec3& d;
    double min_t;
    std::optional<int> ignore;
    std::optional<RayHit> best;
    double limit() const {
      return best ? best->distance : std::numeric_limits<double>::infinity();
    }
    void operator()(int f) {
      if (ignore && *ignore == f) return;
      const auto& m = *self->mesh_;
      auto t = intersect_ray_triangle(o, d, m.corner(f, 0), m.corner(f, 1), m.corner(f, 2));
      if (!t || !(*t > min_t)) return;
      if (!best || *t < best->distance || (*t == best->distance && f < best->face))
        best = RayHit{*t, f, o + *t * d};
    }
  } closest{this, origin, direction, min_distance, ignore_face, std::nullopt};
  traverse(origin, direction, closest);
  return closest.best;
}

std::vector<RayHit> cast_ray_brute_force(const TriangleMesh& mesh, const Vec3& origin,
                                         const Vec3& direction, std::optional<int> ignore_face) {
  std::vector<RayHit> hits;
  for (int f = 0; f < mesh.num_faces(); ++f) {
    if (ignore_face && *ignore_face == f) continue;
    if (auto t = intersect_ray_triangle(origin, direction, mesh.corner(f, 0), mesh.corner(f, 1),
                                        mesh.corner(f, 2)))
      hits.push_back({*t, f, origin + *t * direction});
  }
  sort_hits(hits);
  return hits;
}

}  // namespace gripforge
