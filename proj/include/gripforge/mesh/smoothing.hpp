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

#include "gripforge/mesh/triangle_mesh.hpp"

namespace gripforge {

/// Taubin lambda|mu smoothing with uniform umbrella weights. Each iteration
/// applies a shrinking step with lambda = strength followed by an inflating
/// step with mu = -(strength + 0.03). Connectivity is preserved.
TriangleMesh smooth_mesh(const TriangleMesh& mesh, int iterations, double strength);

}  // namespace gripforge
