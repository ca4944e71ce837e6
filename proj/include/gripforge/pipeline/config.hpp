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
#include <filesystem>
#include <string>

#include <json.hpp>

#include "gripforge/assembly/constraints.hpp"
#include "gripforge/optimizer/optimizer.hpp"
#include "gripforge/primitives/selection.hpp"
#include "gripforge/segmentation/segments.hpp"

namespace gripforge {

struct SmoothingParams {
  int iterations = 3;
  double strength = 0.5;  // in (0, 1)
};

struct PipelineConfig {
  std::uint64_t seed = 0;
  SmoothingParams smoothing;
  SegmentationParams segmentation;  // sdf.seed is derived per component
  FitParams fitting;                // seeds are derived per component
  GraspabilityParams grasping;
  Strokes strokes;
  SamplingCounts sampling;
  double cover_slack = kCoverSlack;
};

/// Starts from the defaults and overrides the keys present. Unknown keys and
/// out-of-range values throw Error(kInvalidArgument).
PipelineConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PipelineConfig& c);
PipelineConfig load_config(const std::filesystem::path& path);
void validate_config(const PipelineConfig& c);

/// SHA-256 of the canonical JSON form.
std::string config_hash(const PipelineConfig& c);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace gripforge
