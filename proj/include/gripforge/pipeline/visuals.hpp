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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gripforge/pipeline/pipeline.hpp"

namespace gripforge {

/// Lateral surface of a fitted cylinder; every vertex lies on the fitted radius.
TriangleMesh cylinder_belt(const FittedCylinder& cylinder, int sides = 48);
TriangleMesh box_mesh(const OrientedBox<double>& box);

struct VisualExport {
  std::vector<std::string> files;  // relative to the output directory
  std::vector<std::string> notes;
};

/// Writes <id>_segments.ply, <id>_primitives.ply and op<k>_<id>_grasp.ply
/// under `dir`. Operations without a witness grasp get a note, not a file.
VisualExport export_visuals(const AssemblyTask& task, const std::map<std::string, TriangleMesh>& meshes,
                            const std::vector<ComponentAnalysis>& analyses,
                            const std::vector<OperationAnalysis>& operations, const GraspabilityParams& params,
                            const std::filesystem::path& dir);

}  // namespace gripforge
