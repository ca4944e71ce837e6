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

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "gripforge/mesh/triangle_mesh.hpp"

namespace gripforge {

enum class MeshFormat { kObj, kStlBinary, kStlAscii, kPlyAscii };

/// Guesses the format from the extension; for .stl peeks at the content to
/// tell ASCII from binary.
MeshFormat detect_mesh_format(const std::filesystem::path& path);

struct LoadedMesh {
  TriangleMesh mesh;
  int dropped_degenerate = 0;
  int merged_vertices = 0;
};

/// Vertex welding tolerance applied on load, in mm.
inline constexpr double kWeldTolerance = 1e-6;

LoadedMesh load_mesh(const std::filesystem::path& path, MeshFormat format);
LoadedMesh load_mesh(const std::filesystem::path& path);

/// Builds a mesh from raw positions and (possibly degenerate) triangles:
/// welds vertices within `weld_tol`, drops degenerate faces and unreferenced
/// vertices. Throws Error(kMalformedGeometry) on bad indices or non-finite
/// coordinates and Error(kEmptyMesh) when nothing survives.
LoadedMesh build_mesh(std::span<const Vec3> positions, std::span<const std::array<int, 3>> tris,
                      double weld_tol = kWeldTolerance);

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

/// ASCII PLY, optionally with per-face colors.
void write_ply(const std::filesystem::path& path, const TriangleMesh& mesh,
               std::span<const Rgb> face_colors = {});

/// Binary STL (used by fixtures and round-trip tests).
void write_stl_binary(const std::filesystem::path& path, const TriangleMesh& mesh);

void write_obj(const std::filesystem::path& path, const TriangleMesh& mesh);

/// Deterministic, visually distinct color for a label.
Rgb label_color(int label);

/// Blue-to-red ramp for t in [0, 1].
Rgb ramp_color(double t);

}  // namespace gripforge
