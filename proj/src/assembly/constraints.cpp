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

#include "gripforge/assembly/constraints.hpp"

#include <cmath>

#include "gripforge/core/error.hpp"
#include "gripforge/core/parallel.hpp"
#include "gripforge/core/random.hpp"

namespace gripforge {

std::vector<SegmentFit> fit_segments(const TriangleMesh& mesh, const SegmentLabeling& segments,
                                     const FitParams& params, std::uint64_t seed) {
  std::vector<SegmentFit> fits(segments.count());
  parallel_for(fits.size(), [&](std::size_t s) {
    fits[s] = fit_segment(mesh, segments.faces[s], static_cast<int>(s), params, derive_seed(seed, s));
  });
  return fits;
}

ExclusionResult apply_affordance_exclusions(const SegmentLabeling& labeling, const std::string& component,
                                            const std::vector<AffordanceExclusion>& exclusions) {
  ExclusionResult out;
  std::vector<char> excluded(labeling.count(), 0);
  for (const auto& e : exclusions) {
    if (e.component != component) continue;
    if (e.segment_index < 0 || e.segment_index >= labeling.count())
      throw ComponentError(ErrorCode::kExclusionOutOfRange, component,
                           "exclusion index " + std::to_string(e.segment_index) + " outside [0, " +
                               std::to_string(labeling.count()) + ") for component '" + component + "'");
    if (!excluded[e.segment_index]) out.applied.push_back(e);
    excluded[e.segment_index] = 1;
  }
  for (int s = 0; s < labeling.count(); ++s)
    if (!excluded[s]) out.candidates.push_back(s);
  return out;
}

std::vector<double> default_finger_lengths() {
  std::vector<double> out;
  for (int i = 1; i <= 10; ++i) out.push_back(10.0 * i);
  return out;
}

void PassiveScene::add(const TriangleMesh& mesh, const Rigid& world_pose) {
  meshes_.emplace_back(mesh.transformed(world_pose));
}

std::vector<const CollisionMesh*> PassiveScene::obstacles() const {
  std::vector<const CollisionMesh*> out;
  for (const auto& m : meshes_) out.push_back(&m);
  return out;
}

std::vector<GraspCandidate> segment_candidates(const ComponentModel& model, int segment,
                                               const GraspabilityParams& params) {
  const SegmentFit& fit = model.fits.at(segment);
  const PrimitiveSelection& sel = fit.selection;
  if (!sel.graspable) return {};
  if (sel.gripper == GripperType::kThreeFingerCentric) {
    if (!fit.cylinder) return {};
    return generate_three_finger_grasps(*fit.cylinder, segment, params.sampling);
  }
  const auto facets = planar_cluster(model.mesh, model.segments.faces.at(segment), params.facet_angle_tol_deg);
  FacetPairParams pp;
  pp.angle_tol_deg = params.facet_angle_tol_deg;
  pp.min_area = params.min_facet_area;
  std::vector<GraspCandidate> out;
  for (const auto& pair : find_parallel_facet_pairs(model.mesh, facets, pp)) {
    // Only pairs as wide as the selected box extent realise the chosen width.
    if (std::abs(pair.width - sel.width) > params.width_match_tol * sel.width + 0.5) continue;
    auto grasps = generate_two_finger_grasps(pair, segment, params.sampling);
    out.insert(out.end(), grasps.begin(), grasps.end());
  }
  return out;
}

namespace {

std::vector<char> feasibility(const AssemblyOperation& op, const CollisionMesh& self,
                              const GraspCandidate& c, const std::vector<const CollisionMesh*>& obstacles,
                              const GraspabilityParams& params) {
  const auto& ladder = params.finger_lengths;
  std::vector<char> ok(ladder.size(), 0);
  const int n = std::max(params.path_samples, 2);
  std::vector<Rigid> path(n);
  for (int k = 0; k < n; ++k) path[k] = interpolate(op.t_before, op.t_after, double(k) / (n - 1));
  std::vector<char> skip(self.mesh().num_faces(), 0);
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(c.contact_depth < ladder[i])) continue;
    const GripperSolid solid = build_gripper_solid(c.type, c.width, ladder[i], params.geometry).posed(c.pose);
    if (params.self_collision) {
      // Faces touched by the finger pads are the contacts themselves.
      std::fill(skip.begin(), skip.end(), 0);
      for (const auto& slab : solid.contact_slabs(params.geometry.contact_tol))
        for (int f : self.overlapping_faces(slab)) skip[f] = 1;
      // The palm never touches the part, so it is tested without the mask.
      bool hit = self.intersects(solid.boxes[0]);
      for (std::size_t b = 1; b < solid.boxes.size() && !hit; ++b) hit = self.intersects(solid.boxes[b], &skip);
      if (hit) continue;
    }
    bool clear = true;
    for (const Rigid& t : path)
      if (check_collision(solid.posed(t), obstacles)) {
        clear = false;
        break;
      }
    ok[i] = clear;
  }
  return ok;
}

int first_feasible(const std::vector<char>& ok) {
  for (std::size_t i = 0; i < ok.size(); ++i)
    if (ok[i]) return static_cast<int>(i);
  return -1;
}

}  // namespace

std::vector<char> finger_length_feasibility(const AssemblyOperation& op, const ComponentModel& model,
                                            const GraspCandidate& candidate, const PassiveScene& scene,
                                            const GraspabilityParams& params) {
  const CollisionMesh self(model.mesh);
  return feasibility(op, self, candidate, scene.obstacles(), params);
}

std::vector<GraspableSegment> graspable_segments(const AssemblyOperation& op, const ComponentModel& model,
                                                 const std::vector<int>& candidate_segments,
                                                 const PassiveScene& scene, const GraspabilityParams& params,
                                                 std::vector<SegmentReport>* report) {
  const CollisionMesh self(model.mesh);
  const auto obstacles = scene.obstacles();
  std::vector<GraspableSegment> out;
  for (int s : candidate_segments) {
    const auto cands = segment_candidates(model, s, params);
    std::vector<std::vector<char>> ok(cands.size());
    parallel_for(cands.size(), [&](std::size_t i) { ok[i] = feasibility(op, self, cands[i], obstacles, params); });
    int best = -1, best_index = -1;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const int f = first_feasible(ok[i]);
      if (f >= 0 && (best_index < 0 || f < best_index)) best = static_cast<int>(i), best_index = f;
    }
    if (report) report->push_back({s, static_cast<int>(cands.size()), best >= 0});
    if (best < 0) continue;
    out.push_back({s, cands[best], ok[best], static_cast<int>(cands.size())});
  }
  return out;
}

SegmentConstraint segment_constraint(const std::string& component, const PrimitiveSelection& selection,
                                     const std::vector<char>& feasible, const std::vector<double>& ladder) {
  SegmentConstraint c;
  c.component = component;
  c.segment = selection.segment;
  c.fingers = selection.gripper == GripperType::kThreeFingerCentric ? 3 : 2;
  c.width = selection.width;
  const int first = first_feasible(feasible);
  if (first < 0)
    throw ComponentError(ErrorCode::kInfeasibleComponent, component,
                         "segment " + std::to_string(selection.segment) + " has no feasible finger length");
  int last = first;
  while (last + 1 < static_cast<int>(feasible.size()) && feasible[last + 1]) ++last;
  c.length_min = ladder[first];
  if (last + 1 == static_cast<int>(ladder.size()))
    c.length_max = kUnbounded;
  else if (last > first)
    c.length_max = ladder[last];
  else
    c.length_max = 0.5 * (ladder[first] + ladder[first + 1]);
  return c;
}

ComponentConstraint derive_constraints(const ComponentModel& model, const std::vector<GraspableSegment>& graspable,
                                       const GraspabilityParams& params) {
  ComponentConstraint out;
  out.component = model.id;
  for (const auto& g : graspable) {
    if (first_feasible(g.feasible) < 0) continue;  // dropped: nothing on the ladder works
    out.segments.push_back(
        segment_constraint(model.id, model.fits.at(g.segment).selection, g.feasible, params.finger_lengths));
  }
  return out;
}

}  // namespace gripforge
