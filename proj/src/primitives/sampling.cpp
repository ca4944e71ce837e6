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

#include "gripforge/primitives/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "gripforge/core/error.hpp"
#include "gripforge/core/random.hpp"

namespace gripforge {

PointCloud PointCloud::transformed(const Rigid& t) const {
  PointCloud out = *this;
  for (auto& p : out.points) p = t * p;
  for (auto& n : out.normals) n = t.linear() * n;
  return out;
}

PointCloud sample_surface(const TriangleMesh& mesh, std::span<const int> faces, int count,
                          std::uint64_t seed) {
  if (faces.empty()) throw Error(ErrorCode::kEmptyMesh, "cannot sample an empty face set");
  if (count < 1) throw Error(ErrorCode::kInvalidArgument, "sample count must be positive");
  std::vector<double> cdf(faces.size());
  double total = 0;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    total += mesh.area(faces[i]);
    cdf[i] = total;
  }
  Rng rng(seed);
  PointCloud out;
  out.points.reserve(count);
  out.normals.reserve(count);
  out.faces.reserve(count);
  for (int s = 0; s < count; ++s) {
    const double r = uniform01(rng) * total;
    const std::size_t i = std::min<std::size_t>(
        faces.size() - 1, std::upper_bound(cdf.begin(), cdf.end(), r) - cdf.begin());
    const int f = faces[i];
    const double a = std::sqrt(uniform01(rng)), b = uniform01(rng);
    const Vec3 p = (1 - a) * mesh.corner(f, 0) + a * (1 - b) * mesh.corner(f, 1) +
                   a * b * mesh.corner(f, 2);
    out.points.push_back(p);
    out.normals.push_back(mesh.normal(f));
    out.faces.push_back(f);
  }
  return out;
}

}  // namespace gripforge
