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
#include <vector>

#include "gripforge/mesh/triangle_mesh.hpp"
#include "gripforge/segmentation/gmm.hpp"
#include "gripforge/segmentation/graph_cut.hpp"
#include "gripforge/segmentation/sdf.hpp"

namespace gripforge {

/// Partition of the faces into edge-connected segments.
struct SegmentLabeling {
  std::vector<int> segment_of_face;
  std::vector<std::vector<int>> faces;  // per segment, ascending
  std::vector<int> cluster;             // per segment

  int count() const { return static_cast<int>(faces.size()); }
};

/// Connected components of equal cluster id. Segments smaller than
/// `min_fraction` of all faces are merged into the neighbour sharing the
/// longest boundary. Segment ids follow the smallest face index.
SegmentLabeling split_into_segments(const TriangleMesh& mesh, const std::vector<int>& cluster_ids,
                                    double min_fraction = 0.01);

struct SegmentationParams {
  SdfParams sdf;
  std::vector<int> k_candidates{2, 3, 4, 5};
  int fixed_k = 0;  // > 0 overrides the BIC choice
  GmmParams gmm;
  HardClusterParams hard;
  double min_segment_fraction = 0.01;
};

struct SegmentationResult {
  SdfField sdf;  // after filling
  int missing_sdf = 0;
  std::vector<double> normalized;
  SoftClustering soft;
  HardClustering hard;
  SegmentLabeling segments;
};

SegmentationResult segment_mesh(const TriangleMesh& mesh, const SegmentationParams& params);

}  // namespace gripforge
