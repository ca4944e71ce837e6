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
#include <string>
#include <vector>

#include "gripforge/core/geometry.hpp"

namespace gripforge {

struct Component {
  std::string id;
  std::string name;
  std::filesystem::path mesh_path;  // absolute after loading
  Rigid pose = Rigid::Identity();   // world pose of components that are never active
};

/// One insertion: the active component is held from T_before to T_after
/// (world poses of the active component) while the passive components stay put.
struct AssemblyOperation {
  std::string active;
  std::vector<std::string> passive;
  Rigid t_before = Rigid::Identity();
  Rigid t_after = Rigid::Identity();
};

struct AffordanceExclusion {
  std::string component;
  int segment_index = -1;
  std::string reason;
};

struct AssemblyTask {
  std::vector<Component> components;
  std::vector<AssemblyOperation> operations;
  std::vector<AffordanceExclusion> exclusions;

  const Component& component(const std::string& id) const;
  bool is_active(const std::string& id) const;
  /// T_after for assembled components, the static pose for the others.
  Rigid final_pose(const std::string& id) const;
};

/// Reads a task file; mesh paths are resolved against the file's directory.
/// Errors: kTaskFormat (unparsable or missing fields), kMissingMesh,
/// kNonRigidTransform, kSequenceInconsistency.
AssemblyTask load_assembly_task(const std::filesystem::path& path);
AssemblyTask parse_assembly_task(const std::string& json_text, const std::filesystem::path& base_dir);

/// Validates the operation sequence: known ids, each component active at most
/// once, and every passive set equal to the static components plus the
/// actives of the earlier operations.
void validate_assembly_task(const AssemblyTask& task);

/// Row-major 4x4 to a rigid transform; throws kNonRigidTransform.
Rigid rigid_from_row_major(const std::vector<double>& m, const std::string& what);
std::vector<double> row_major(const Rigid& t);

}  // namespace gripforge
