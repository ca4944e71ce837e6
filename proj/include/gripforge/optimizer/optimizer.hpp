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

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gripforge/assembly/constraints.hpp"

namespace gripforge {

struct Strokes {
  double two_finger = 48;    // d_2, mm
  double three_finger = 8;   // d_3, mm

  double for_fingers(int f) const { return f == 3 ? three_finger : two_finger; }
};

/// Candidate gripper {F, W-, W+, L}; W- = max(0, W+ - d_F).
struct GripperParams {
  int fingers = 2;
  double width_min = 0;
  double width_max = 0;
  double finger_length = 0;

  bool operator==(const GripperParams&) const = default;
};

GripperParams make_gripper(int fingers, double width_max, double finger_length, const Strokes& strokes);

struct GroupBounds {
  int fingers = 2;
  double width_upper = 0;
  double width_lower = 0;
  double length_upper = 0;
  double length_lower = 0;
  int n = 8;  // width samples; 1 when the range collapses
  int m = 4;  // length samples; 1 when the range collapses
};

struct SamplingCounts {
  int n = 8;
  int m = 4;
};

/// One entry per finger count present among the segment constraints, 2 before 3.
std::vector<GroupBounds> compute_bounds(const std::vector<ComponentConstraint>& constraints, const Strokes& strokes,
                                        const SamplingCounts& counts = {});

/// Uniform grid with both endpoints; a single sample sits on `hi`.
std::vector<double> uniform_grid(double lo, double hi, int count);

/// Widths outer, lengths inner, groups in order.
std::vector<GripperParams> sample_params(const std::vector<GroupBounds>& bounds, const Strokes& strokes);

using CoverMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

struct CoverProblem {
  CoverMatrix a;                   // components x params
  std::vector<std::string> rows;   // component ids
  std::vector<GripperParams> params;

  int m() const { return static_cast<int>(a.rows()); }
  int n() const { return static_cast<int>(a.cols()); }
};

/// Default tolerance on the strict inequalities, in mm.
inline constexpr double kCoverSlack = 1e-9;

/// Coverage test for one segment: F_j = F_i, L_i- < L_j < L_i+ and W_j- < W_i < W_j+,
/// each strict bound widened by `slack`.
bool satisfies(const SegmentConstraint& c, const GripperParams& p, double slack = kCoverSlack);

CoverProblem build_coefficients(const std::vector<ComponentConstraint>& constraints,
                                const std::vector<GripperParams>& params, double slack = kCoverSlack);

/// Throws ComponentError(kInfeasibleComponent) naming the first all-zero row.
void require_coverable(const CoverProblem& problem);

struct CoverSolution {
  std::vector<int> selected;    // ascending
  std::vector<int> assignment;  // per row: lowest selected column covering it
  int cardinality() const { return static_cast<int>(selected.size()); }
};

/// Exact minimum cover by branch-and-bound; among minimum covers the
/// lexicographically smallest index set is returned.
CoverSolution minimize_grippers(const CoverProblem& problem);

struct OracleResult {
  int cardinality = 0;
  std::vector<int> selected;  // first minimum cover in lexicographic order
};

inline constexpr int kOracleMaxColumns = 20;

/// Enumerates subsets by increasing size. Throws Error(kProblemTooLarge) past
/// kOracleMaxColumns columns and Error(kInfeasibleComponent) if no cover exists.
OracleResult exhaustive_cover_oracle(const CoverProblem& problem);

bool is_cover(const CoverProblem& problem, const std::vector<int>& columns);

nlohmann::json to_json(const GripperParams& p);
nlohmann::json to_json(const CoverProblem& p);
nlohmann::json to_json(const CoverSolution& s);

}  // namespace gripforge
