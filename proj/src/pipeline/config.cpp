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

#include "gripforge/pipeline/config.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "gripforge/core/error.hpp"

namespace gripforge {

using nlohmann::json;

namespace {

// Reads `key` into `out` when present; records the key as known.
class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw Error(ErrorCode::kInvalidArgument, where_ + ": expected an object");
  }
  ~Reader() noexcept(false) {
    if (std::uncaught_exceptions()) return;
    for (const auto& [k, v] : j_.items())
      if (!known_.count(k)) throw Error(ErrorCode::kInvalidArgument, where_ + ": unknown key '" + k + "'");
  }

  template <typename T>
  void get(const char* key, T& out) {
    known_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kInvalidArgument, where_ + "." + key + ": " + e.what());
    }
  }
  const json* child(const char* key) {
    known_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> known_;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, "config: " + what);
}

}  // namespace

PipelineConfig config_from_json(const json& j) {
  PipelineConfig c;
  Reader r(j, "config");
  r.get("seed", c.seed);
  r.get("cover_slack", c.cover_slack);
  if (const json* s = r.child("smoothing")) {
    Reader q(*s, "smoothing");
    q.get("iterations", c.smoothing.iterations);
    q.get("strength", c.smoothing.strength);
  }
  if (const json* s = r.child("segmentation")) {
    Reader q(*s, "segmentation");
    auto& p = c.segmentation;
    q.get("rays_per_face", p.sdf.rays_per_face);
    q.get("cone_angle_deg", p.sdf.cone_angle_deg);
    q.get("origin_offset", p.sdf.origin_offset);
    q.get("min_weight_angle_deg", p.sdf.min_weight_angle_deg);
    q.get("k_candidates", p.k_candidates);
    q.get("fixed_k", p.fixed_k);
    q.get("gmm_max_iters", p.gmm.max_iters);
    q.get("gmm_restarts", p.gmm.restarts);
    q.get("gmm_tolerance", p.gmm.tolerance);
    q.get("lambda", p.hard.lambda);
    q.get("max_sweeps", p.hard.max_sweeps);
    q.get("min_segment_fraction", p.min_segment_fraction);
  }
  if (const json* s = r.child("fitting")) {
    Reader q(*s, "fitting");
    auto& p = c.fitting;
    q.get("samples", p.samples);
    q.get("cylinder_tol_factor", p.cylinder_tol_factor);
    q.get("shell_tol_factor", p.shell_tol_factor);
    q.get("ransac_iters", p.cylinder.max_iters);
    q.get("normal_tol_deg", p.cylinder.normal_tol_deg);
    q.get("min_inlier_fraction", p.cylinder.min_inlier_fraction);
    q.get("nonempty_coverage_deg", p.cylinder.nonempty_coverage_deg);
    q.get("nonempty_inlier_fraction", p.cylinder.nonempty_inlier_fraction);
    q.get("face_coverage_threshold", p.emptiness.coverage_threshold);
    q.get("face_grid", p.emptiness.grid);
  }
  if (const json* s = r.child("grasping")) {
    Reader q(*s, "grasping");
    auto& p = c.grasping;
    q.get("n_rotations", p.sampling.n_rotations);
    q.get("depth_samples", p.sampling.depth_samples);
    q.get("depth_start", p.sampling.depth_start);
    q.get("depth_step", p.sampling.depth_step);
    q.get("n_rotations_3f", p.sampling.n_rotations_3f);
    q.get("n_axial", p.sampling.n_axial);
    q.get("facet_angle_tol_deg", p.facet_angle_tol_deg);
    q.get("min_facet_area", p.min_facet_area);
    q.get("width_match_tol", p.width_match_tol);
    q.get("path_samples", p.path_samples);
    q.get("finger_lengths", p.finger_lengths);
    q.get("self_collision", p.self_collision);
    if (const json* g = q.child("gripper")) {
      Reader h(*g, "grasping.gripper");
      h.get("finger_width", p.geometry.finger_width);
      h.get("finger_thickness", p.geometry.finger_thickness);
      h.get("palm_size", p.geometry.palm_size);
      h.get("palm_height", p.geometry.palm_height);
      h.get("contact_tol", p.geometry.contact_tol);
    }
  }
  if (const json* s = r.child("optimizer")) {
    Reader q(*s, "optimizer");
    q.get("stroke_2f", c.strokes.two_finger);
    q.get("stroke_3f", c.strokes.three_finger);
    q.get("n", c.sampling.n);
    q.get("m", c.sampling.m);
  }
  validate_config(c);
  return c;
}

json to_json(const PipelineConfig& c) {
  const auto& s = c.segmentation;
  const auto& f = c.fitting;
  const auto& g = c.grasping;
  json j;
  j["seed"] = c.seed;
  j["cover_slack"] = c.cover_slack;
  j["smoothing"] = {{"iterations", c.smoothing.iterations}, {"strength", c.smoothing.strength}};
  j["segmentation"] = {{"rays_per_face", s.sdf.rays_per_face},
                       {"cone_angle_deg", s.sdf.cone_angle_deg},
                       {"origin_offset", s.sdf.origin_offset},
                       {"min_weight_angle_deg", s.sdf.min_weight_angle_deg},
                       {"k_candidates", s.k_candidates},
                       {"fixed_k", s.fixed_k},
                       {"gmm_max_iters", s.gmm.max_iters},
                       {"gmm_restarts", s.gmm.restarts},
                       {"gmm_tolerance", s.gmm.tolerance},
                       {"lambda", s.hard.lambda},
                       {"max_sweeps", s.hard.max_sweeps},
                       {"min_segment_fraction", s.min_segment_fraction}};
  j["fitting"] = {{"samples", f.samples},
                  {"cylinder_tol_factor", f.cylinder_tol_factor},
                  {"shell_tol_factor", f.shell_tol_factor},
                  {"ransac_iters", f.cylinder.max_iters},
                  {"normal_tol_deg", f.cylinder.normal_tol_deg},
                  {"min_inlier_fraction", f.cylinder.min_inlier_fraction},
                  {"nonempty_coverage_deg", f.cylinder.nonempty_coverage_deg},
                  {"nonempty_inlier_fraction", f.cylinder.nonempty_inlier_fraction},
                  {"face_coverage_threshold", f.emptiness.coverage_threshold},
                  {"face_grid", f.emptiness.grid}};
  j["grasping"] = {{"n_rotations", g.sampling.n_rotations},
                   {"depth_samples", g.sampling.depth_samples},
                   {"depth_start", g.sampling.depth_start},
                   {"depth_step", g.sampling.depth_step},
                   {"n_rotations_3f", g.sampling.n_rotations_3f},
                   {"n_axial", g.sampling.n_axial},
                   {"facet_angle_tol_deg", g.facet_angle_tol_deg},
                   {"min_facet_area", g.min_facet_area},
                   {"width_match_tol", g.width_match_tol},
                   {"path_samples", g.path_samples},
                   {"finger_lengths", g.finger_lengths},
                   {"self_collision", g.self_collision},
                   {"gripper",
                    {{"finger_width", g.geometry.finger_width},
                     {"finger_thickness", g.geometry.finger_thickness},
                     {"palm_size", g.geometry.palm_size},
                     {"palm_height", g.geometry.palm_height},
                     {"contact_tol", g.geometry.contact_tol}}}};
  j["optimizer"] = {{"stroke_2f", c.strokes.two_finger},
                    {"stroke_3f", c.strokes.three_finger},
                    {"n", c.sampling.n},
                    {"m", c.sampling.m}};
  return j;
}

void validate_config(const PipelineConfig& c) {
  require(c.smoothing.iterations >= 0, "smoothing.iterations must be >= 0");
  require(c.smoothing.strength > 0 && c.smoothing.strength < 1, "smoothing.strength must be in (0, 1)");
  const auto& s = c.segmentation;
  require(s.sdf.rays_per_face >= 1, "segmentation.rays_per_face must be >= 1");
  require(s.sdf.cone_angle_deg > 0 && s.sdf.cone_angle_deg < 180, "segmentation.cone_angle_deg must be in (0, 180)");
  require(s.sdf.origin_offset >= 0, "segmentation.origin_offset must be >= 0");
  require(!s.k_candidates.empty() || s.fixed_k > 0, "segmentation needs k_candidates or fixed_k");
  for (int k : s.k_candidates) require(k >= 1, "segmentation.k_candidates must be >= 1");
  require(s.fixed_k >= 0, "segmentation.fixed_k must be >= 0");
  require(s.gmm.max_iters >= 1 && s.gmm.restarts >= 1, "segmentation gmm iterations and restarts must be >= 1");
  require(s.hard.lambda >= 0, "segmentation.lambda must be >= 0");
  require(s.min_segment_fraction >= 0 && s.min_segment_fraction < 1, "segmentation.min_segment_fraction must be in [0, 1)");
  const auto& f = c.fitting;
  require(f.samples >= 50, "fitting.samples must be >= 50");
  require(f.cylinder_tol_factor > 0 && f.shell_tol_factor > 0, "fitting tolerance factors must be > 0");
  require(f.cylinder.max_iters >= 1, "fitting.ransac_iters must be >= 1");
  require(f.emptiness.grid >= 1, "fitting.face_grid must be >= 1");
  const auto& g = c.grasping;
  require(g.sampling.n_rotations >= 1 && g.sampling.n_rotations_3f >= 1 && g.sampling.depth_samples >= 1 &&
              g.sampling.n_axial >= 1,
          "grasping sample counts must be >= 1");
  require(g.path_samples >= 2, "grasping.path_samples must be >= 2");
  require(!g.finger_lengths.empty(), "grasping.finger_lengths must be nonempty");
  for (std::size_t i = 0; i < g.finger_lengths.size(); ++i) {
    require(g.finger_lengths[i] > 0, "grasping.finger_lengths must be positive");
    if (i) require(g.finger_lengths[i] > g.finger_lengths[i - 1], "grasping.finger_lengths must increase");
  }
  require(g.geometry.finger_width > 0 && g.geometry.finger_thickness > 0 && g.geometry.palm_size > 0 &&
              g.geometry.palm_height > 0 && g.geometry.contact_tol >= 0,
          "grasping.gripper dimensions must be positive");
  require(c.strokes.two_finger > 0 && c.strokes.three_finger > 0, "optimizer strokes must be > 0");
  require(c.sampling.n >= 1 && c.sampling.m >= 1, "optimizer n and m must be >= 1");
  require(c.cover_slack >= 0, "cover_slack must be >= 0");
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnreadableFile, "cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, "config does not parse: " + std::string(e.what()));
  }
  return config_from_json(j);
}

std::string config_hash(const PipelineConfig& c) { return sha256_hex(to_json(c).dump()); }

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr))
    throw Error(ErrorCode::kIo, "sha256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnreadableFile, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

}  // namespace gripforge
