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

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gripforge/assembly/task.hpp"
#include "gripforge/grasping/candidates.hpp"
#include "gripforge/grasping/collision.hpp"
#include "gripforge/primitives/selection.hpp"
#include "gripforge/segmentation/segments.hpp"

namespace gripforge {

/// A component after segmentation and fitting, in its own frame.
struct ComponentModel {
  std::string id;
  TriangleMesh mesh;
  SegmentLabeling segments;
  std::vector<SegmentFit> fits;  // one per segment
};

/// Fits every segment with seeds derived from (seed, segment id).
std::vector<SegmentFit> fit_segments(const TriangleMesh& mesh, const SegmentLabeling& segments,
                                     const FitParams& params, std::uint64_t seed);

struct ExclusionResult {
  std::vector<int> candidates;  // ascending
  std::vector<AffordanceExclusion> applied;
};

/// Drops the segments listed for `component`. Throws
/// Error(kExclusionOutOfRange) for an index outside the labeling.
ExclusionResult apply_affordance_exclusions(const SegmentLabeling& labeling, const std::string& component,
                                            const std::vector<AffordanceExclusion>& exclusions);

std::vector<double> default_finger_lengths();  // 10, 20, ..., 100 mm

struct GraspabilityParams {
  GripperGeometry geometry;
  GraspSampling sampling;
  double facet_angle_tol_deg = 10;
  double min_facet_area = 25;
  double width_match_tol = 0.05;  // relative; facet pairs must match the selected width
  int path_samples = 5;
  std::vector<double> finger_lengths = default_finger_lengths();
  bool self_collision = true;
};

/// Obstacles of one operation, in world coordinates.
class PassiveScene {
 public:
  void add(const TriangleMesh& mesh, const Rigid& world_pose);
  std::vector<const CollisionMesh*> obstacles() const;
  bool empty() const { return meshes_.empty(); }

 private:
  std::vector<CollisionMesh> meshes_;
};

struct GraspableSegment {
  int segment = -1;
  GraspCandidate witness;
  std::vector<char> feasible;  // per finger-length ladder entry, for the witness
  int candidates = 0;          // generated for the segment
};

struct SegmentReport {
  int segment = -1;
  int candidates = 0;
  bool graspable = false;
};

/// Grasp candidates of one segment in the component frame.
std::vector<GraspCandidate> segment_candidates(const ComponentModel& model, int segment,
                                               const GraspabilityParams& params);

/// Segments with at least one candidate that, for some finger length, reaches
/// its contacts, clears the component's own other surfaces and stays clear of
/// the passive scene at every sample of the path. The witness is the candidate
/// with the shortest feasible finger length (first on ties).
std::vector<GraspableSegment> graspable_segments(const AssemblyOperation& op, const ComponentModel& model,
                                                 const std::vector<int>& candidate_segments,
                                                 const PassiveScene& scene, const GraspabilityParams& params,
                                                 std::vector<SegmentReport>* report = nullptr);

/// Per-ladder feasibility of one candidate.
std::vector<char> finger_length_feasibility(const AssemblyOperation& op, const ComponentModel& model,
                                            const GraspCandidate& candidate, const PassiveScene& scene,
                                            const GraspabilityParams& params);

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

struct SegmentConstraint {
  std::string component;
  int segment = -1;
  int fingers = 2;
  double width = 0;
  double length_min = 0;
  double length_max = kUnbounded;

  bool operator==(const SegmentConstraint&) const = default;
};

struct ComponentConstraint {
  std::string component;
  std::vector<SegmentConstraint> segments;
};

/// L- is the first feasible ladder length. L+ is unbounded if the feasible
/// run starting at L- reaches the end of the ladder, the last length of that
/// run otherwise, or the midpoint to the next ladder value when the run is a
/// single length.
SegmentConstraint segment_constraint(const std::string& component, const PrimitiveSelection& selection,
                                     const std::vector<char>& feasible, const std::vector<double>& ladder);

ComponentConstraint derive_constraints(const ComponentModel& model, const std::vector<GraspableSegment>& graspable,
                                       const GraspabilityParams& params);

}  // namespace gripforge
