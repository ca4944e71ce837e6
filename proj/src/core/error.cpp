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

#include "gripforge/core/error.hpp"

namespace gripforge {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnreadableFile: return "unreadable_file";
    case ErrorCode::kMalformedGeometry: return "malformed_geometry";
    case ErrorCode::kEmptyMesh: return "empty_mesh";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDegenerateHull: return "degenerate_hull";
    case ErrorCode::kTooFewPoints: return "too_few_points";
    case ErrorCode::kTaskFormat: return "task_format";
    case ErrorCode::kMissingMesh: return "missing_mesh";
    case ErrorCode::kNonRigidTransform: return "non_rigid_transform";
    case ErrorCode::kSequenceInconsistency: return "sequence_inconsistency";
    case ErrorCode::kExclusionOutOfRange: return "exclusion_out_of_range";
    case ErrorCode::kUngraspableComponent: return "ungraspable_component";
    case ErrorCode::kInfeasibleComponent: return "infeasible_component";
    case ErrorCode::kProblemTooLarge: return "problem_too_large";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace gripforge
