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

// Synthetic assembly tasks written to disk as task.json plus PLY meshes.

#pragma once

#include <filesystem>

#include "gripforge/mesh/triangle_mesh.hpp"

namespace gripforge::demo {

/// Rotor analogue: r=4 journal (z in [-70, -30]), r=20 flange ([-30, 0]) and
/// r=4 journal ([0, 40]) on one axis.
TriangleMesh rotor_shaft();

/// Housing with a through bore around the lower journal and a counterbore
/// around the flange; its top is flush with the flange top at z = 0.
TriangleMesh rotor_housing();

/// Five components: base plate, block, stepped shaft, sleeve over the shaft
/// and a cap on the block. Returns the task file path.
std::filesystem::path write_demo_task(const std::filesystem::path& dir);

/// Peg dropped into a block (the block is the base).
std::filesystem::path write_peg_task(const std::filesystem::path& dir);

/// Rotor dropped into its housing, or alone when `with_housing` is false.
std::filesystem::path write_rotor_task(const std::filesystem::path& dir, bool with_housing = true);

/// A core inside a closed shell that hugs it with 2 mm clearance.
std::filesystem::path write_enclosure_task(const std::filesystem::path& dir);

}  // namespace gripforge::demo
