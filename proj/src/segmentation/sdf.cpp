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

#include "gripforge/segmentation/sdf.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "gripforge/core/error.hpp"
#include "gripforge/core/parallel.hpp"
#include "gripforge/core/random.hpp"

namespace gripforge {

int SdfField::missing_count() const {
  return static_cast<int>(std::count(defined.begin(), defined.end(), 0));
}

namespace {

struct Ray {
  double length;
  double angle;
};

double median_of(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + mid));
  return m;
}

}  // namespace

SdfField compute_sdf(const TriangleMesh& mesh, const RayAccelerator& accel,
                     const SdfParams& params) {
  if (params.rays_per_face < 1) throw Error(ErrorCode::kInvalidArgument, "rays_per_face must be >= 1");
  if (!(params.cone_angle_deg > 0 && params.cone_angle_deg < 180))
    throw Error(ErrorCode::kInvalidArgument, "cone angle must lie in (0, 180) degrees");

  const int nf = mesh.num_faces();
  SdfField out;
  out.values.assign(nf, 0.0);
  out.defined.assign(nf, 0);

  const double half = deg2rad(params.cone_angle_deg) / 2;
  const double cos_half = std::cos(half);
  const double min_angle = deg2rad(params.min_weight_angle_deg);
  const double offset = params.origin_offset * mesh.bbox_diagonal();

  parallel_for(nf, [&](std::size_t fi) {
    const int f = static_cast<int>(fi);
    const Vec3 n = mesh.normal(f);
    const Vec3 u = (mesh.corner(f, 1) - mesh.corner(f, 0)).normalized();
    const Vec3 w = n.cross(u);
    const Vec3 c = mesh.centroid(f);

    Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(f)));
    std::vector<Ray> rays;
    rays.reserve(params.rays_per_face);
    for (int k = 0; k < params.rays_per_face; ++k) {
      // Uniform over the spherical cap. No ray runs exactly along the axis:
      // on axis-aligned meshes such rays graze coincident edges.
      const double cos_t = 1.0 - uniform01(rng) * (1.0 - cos_half);
      const double phi = 2 * kPi * uniform01(rng);
      const double sin_t = std::sqrt(std::max(0.0, 1 - cos_t * cos_t));
      const Vec3 d = -cos_t * n + sin_t * (std::cos(phi) * u + std::sin(phi) * w);
      const auto hit = accel.first_hit(c, d, offset, f);
      if (!hit) continue;
      rays.push_back({(hit->point - c).norm(), std::acos(std::clamp(cos_t, -1.0, 1.0))});
    }
    if (rays.empty()) return;

    std::vector<double> lengths(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) lengths[i] = rays[i].length;
    const double med = median_of(lengths);
    const double mean = std::accumulate(lengths.begin(), lengths.end(), 0.0) / lengths.size();
    double var = 0;
    for (double l : lengths) var += (l - mean) * (l - mean);
    const double sigma = std::sqrt(var / lengths.size());

    double num = 0, den = 0;
    for (const Ray& r : rays) {
      if (std::abs(r.length - med) > sigma) continue;
      const double wgt = 1.0 / std::max(r.angle, min_angle);
      num += wgt * r.length;
      den += wgt;
    }
    if (den > 0 && num > 0) {
      out.values[f] = num / den;
      out.defined[f] = 1;
    }
  });
  return out;
}

void fill_missing_sdf(const TriangleMesh& mesh, SdfField& sdf) {
  const int nf = sdf.size();
  const auto& nbrs = mesh.face_neighbors();
  std::deque<int> queue;
  std::vector<char> queued(nf, 0);
  for (int f = 0; f < nf; ++f) {
    if (!sdf.is_defined(f)) continue;
    for (int g : nbrs[f])
      if (!sdf.is_defined(g) && !queued[g]) {
        queued[g] = 1;
        queue.push_back(g);
      }
  }
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    double sum = 0;
    int cnt = 0;
    for (int g : nbrs[f])
      if (sdf.is_defined(g)) {
        sum += sdf.values[g];
        ++cnt;
      }
    sdf.values[f] = sum / cnt;  // cnt > 0: enqueued from a defined face
    sdf.defined[f] = 1;
    for (int g : nbrs[f])
      if (!sdf.is_defined(g) && !queued[g]) {
        queued[g] = 1;
        queue.push_back(g);
      }
  }

  double sum = 0;
  int cnt = 0;
  for (int f = 0; f < nf; ++f)
    if (sdf.is_defined(f)) {
      sum += sdf.values[f];
      ++cnt;
    }
  if (cnt == 0) throw Error(ErrorCode::kMalformedGeometry, "no ray hit the surface; mesh is not closed");
  for (int f = 0; f < nf; ++f)
    if (!sdf.is_defined(f)) {
      sdf.values[f] = sum / cnt;
      sdf.defined[f] = 1;
    }
}

std::vector<double> normalize_sdf(const SdfField& sdf) {
  if (sdf.missing_count() > 0) throw Error(ErrorCode::kInvalidArgument, "normalize_sdf needs filled values");
  if (sdf.values.empty()) return {};
  const auto [lo, hi] = std::minmax_element(sdf.values.begin(), sdf.values.end());
  const double vmin = *lo, denom = std::log(*hi / vmin + 1);
  std::vector<double> out(sdf.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log(sdf.values[i] / vmin + 1) / denom;
  return out;
}

}  // namespace gripforge
