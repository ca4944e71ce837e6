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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gripforge/assembly/constraints.hpp"
#include "gripforge/assembly/task.hpp"
#include "gripforge/core/error.hpp"
#include "gripforge/optimizer/optimizer.hpp"
#include "gripforge/pipeline/config.hpp"

namespace gripforge {

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr const char* kReportSchemaVersion = "1.0";

struct ComponentAnalysis {
  std::string id;
  std::string mesh_sha256;
  int missing_sdf = 0;
  int chosen_k = 0;
  ComponentModel model;  // original, unsmoothed mesh
  ExclusionResult exclusions;
};

struct OperationAnalysis {
  int index = 0;
  std::string active;
  std::vector<std::string> passive;
  std::vector<SegmentReport> segments;
  std::vector<GraspableSegment> graspable;
  ComponentConstraint constraint;
};

struct SolveResult {
  std::vector<GroupBounds> bounds;
  CoverProblem problem;
  CoverSolution solution;
};

/// Meshes of every catalog component, in the component frame.
std::map<std::string, TriangleMesh> load_task_meshes(const AssemblyTask& task);

/// Smooths a copy for segmentation, then fits on the original mesh. With a
/// cache directory, segment labelings are reused when the mesh bytes,
/// smoothing, segmentation settings and seed all match.
ComponentAnalysis analyze_component(const AssemblyTask& task, const std::string& id, const TriangleMesh& mesh,
                                    const PipelineConfig& config,
                                    const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

/// Per-component seed: derived from the global seed and the catalog index.
std::uint64_t component_seed(const AssemblyTask& task, const std::string& id, std::uint64_t seed);

/// Throws ComponentError(kUngraspableComponent) when nothing survives and
/// ComponentError(kInfeasibleComponent) when no ladder length works.
OperationAnalysis evaluate_operation(const AssemblyTask& task, int index,
                                     const std::map<std::string, TriangleMesh>& meshes,
                                     const ComponentAnalysis& analysis, const PipelineConfig& config);

SolveResult solve_constraints(const std::vector<ComponentConstraint>& constraints, const PipelineConfig& config);

struct DesignOptions {
  bool export_visuals = false;
  bool use_cache = true;
};

struct DesignOutcome {
  nlohmann::json report;
  int exit_code = 0;  // 0 ok, 2 ungraspable or infeasible, 1 other failure
};

/// Full flow: load, smooth, segment, fit, affordance, grasps, constraints,
/// solve. Writes report.json (and visuals/) under `out_dir`.
DesignOutcome run_pipeline(const std::filesystem::path& task_path, const PipelineConfig& config,
                           const std::filesystem::path& out_dir, const DesignOptions& options = {});

int exit_code_for(ErrorCode code);

// Report fragments, also used by the stage subcommands.
nlohmann::json to_json(const ComponentAnalysis& a);
nlohmann::json to_json(const OperationAnalysis& op, const GraspabilityParams& params);
nlohmann::json to_json(const SolveResult& s);
nlohmann::json to_json(const ComponentConstraint& c);
nlohmann::json to_json(const GroupBounds& b);
std::vector<ComponentConstraint> constraints_from_json(const nlohmann::json& j);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace gripforge
