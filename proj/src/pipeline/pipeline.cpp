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

#include "gripforge/pipeline/pipeline.hpp"

#include <fstream>
#include <iostream>

#include "gripforge/core/error.hpp"
#include "gripforge/core/random.hpp"
#include "gripforge/mesh/io.hpp"
#include "gripforge/mesh/smoothing.hpp"
#include "gripforge/pipeline/visuals.hpp"

namespace gripforge {

using nlohmann::json;

namespace {

// Runs one stage; any failure is rethrown tagged with the stage and component.
template <typename F>
auto stage(const char* name, const std::string& component, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const ComponentError& e) {
    throw StageError(name, e.component(), e.code(), e.what());
  } catch (const Error& e) {
    throw StageError(name, component, e.code(), e.what());
  } catch (const std::exception& e) {
    throw StageError(name, component, ErrorCode::kIo, e.what());
  }
}

json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json length_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

SegmentLabeling labeling_from(const std::vector<int>& segment_of_face, const std::vector<int>& cluster) {
  SegmentLabeling l;
  l.segment_of_face = segment_of_face;
  l.cluster = cluster;
  l.faces.resize(cluster.size());
  for (std::size_t f = 0; f < segment_of_face.size(); ++f) l.faces.at(segment_of_face[f]).push_back(static_cast<int>(f));
  return l;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::kUngraspableComponent || code == ErrorCode::kInfeasibleComponent ? 2 : 1;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

std::map<std::string, TriangleMesh> load_task_meshes(const AssemblyTask& task) {
  std::map<std::string, TriangleMesh> out;
  for (const auto& c : task.components)
    out.emplace(c.id, stage("load", c.id, [&] { return load_mesh(c.mesh_path).mesh; }));
  return out;
}

std::uint64_t component_seed(const AssemblyTask& task, const std::string& id, std::uint64_t seed) {
  for (std::size_t i = 0; i < task.components.size(); ++i)
    if (task.components[i].id == id) return derive_seed(seed, i);
  throw Error(ErrorCode::kSequenceInconsistency, "unknown component id '" + id + "'");
}

ComponentAnalysis analyze_component(const AssemblyTask& task, const std::string& id, const TriangleMesh& mesh,
                                    const PipelineConfig& config,
                                    const std::optional<std::filesystem::path>& cache_dir) {
  ComponentAnalysis a;
  a.id = id;
  a.mesh_sha256 = stage("load", id, [&] { return sha256_file(task.component(id).mesh_path); });
  const std::uint64_t seed = component_seed(task, id, config.seed);
  SegmentationParams sp = config.segmentation;
  sp.sdf.seed = derive_seed(seed, 1);

  const json cfg = to_json(config);
  const std::string key =
      sha256_hex(json{{"mesh", a.mesh_sha256}, {"smoothing", cfg["smoothing"]}, {"segmentation", cfg["segmentation"]},
                      {"seed", sp.sdf.seed}}
                     .dump());
  std::optional<std::filesystem::path> cache_file;
  if (cache_dir) cache_file = *cache_dir / (key + ".json");

  bool cached = false;
  if (cache_file && std::filesystem::is_regular_file(*cache_file)) {
    try {
      std::ifstream in(*cache_file, std::ios::binary);
      const json c = json::parse(in);
      const auto sof = c.at("segment_of_face").get<std::vector<int>>();
      const auto cluster = c.at("cluster").get<std::vector<int>>();
      bool valid = static_cast<int>(sof.size()) == mesh.num_faces();
      for (int s : sof) valid = valid && s >= 0 && s < static_cast<int>(cluster.size());
      if (valid) {
        a.model.segments = labeling_from(sof, cluster);
        a.missing_sdf = c.at("missing_sdf").get<int>();
        a.chosen_k = c.at("chosen_k").get<int>();
        cached = true;
      }
    } catch (const std::exception& e) {
      std::cerr << "gripforge: ignoring unreadable cache entry " << cache_file->string() << ": " << e.what() << "\n";
    }
  }
  if (!cached) {
    stage("segment", id, [&] {
      const TriangleMesh smoothed =
          config.smoothing.iterations > 0 ? smooth_mesh(mesh, config.smoothing.iterations, config.smoothing.strength)
                                          : mesh;
      SegmentationResult r = segment_mesh(smoothed, sp);
      a.model.segments = std::move(r.segments);
      a.missing_sdf = r.missing_sdf;
      a.chosen_k = static_cast<int>(r.soft.mixture.means.size());
      return 0;
    });
    if (cache_file) {
      std::filesystem::create_directories(cache_file->parent_path());
      write_json(*cache_file, {{"segment_of_face", a.model.segments.segment_of_face},
                               {"cluster", a.model.segments.cluster},
                               {"missing_sdf", a.missing_sdf},
                               {"chosen_k", a.chosen_k}});
    }
  }
  a.model.id = id;
  a.model.mesh = mesh;
  a.model.fits = stage("fit", id, [&] { return fit_segments(mesh, a.model.segments, config.fitting, derive_seed(seed, 2)); });
  a.exclusions = stage("affordance", id, [&] { return apply_affordance_exclusions(a.model.segments, id, task.exclusions); });
  return a;
}

OperationAnalysis evaluate_operation(const AssemblyTask& task, int index,
                                     const std::map<std::string, TriangleMesh>& meshes,
                                     const ComponentAnalysis& analysis, const PipelineConfig& config) {
  const AssemblyOperation& op = task.operations.at(index);
  OperationAnalysis out;
  out.index = index;
  out.active = op.active;
  out.passive = op.passive;
  const std::string where = "operation " + std::to_string(index) + " (" + op.active + ")";
  stage("grasps", op.active, [&] {
    PassiveScene scene;
    for (const auto& p : op.passive) scene.add(meshes.at(p), task.final_pose(p));
    out.graspable = graspable_segments(op, analysis.model, analysis.exclusions.candidates, scene, config.grasping,
                                       &out.segments);
    if (out.graspable.empty())
      throw ComponentError(ErrorCode::kUngraspableComponent, op.active,
                           where + ": component '" + op.active + "' has no collision-free grasp on any of its " +
                               std::to_string(analysis.exclusions.candidates.size()) + " candidate segments");
    return 0;
  });
  out.constraint = stage("constraints", op.active, [&] {
    auto c = derive_constraints(analysis.model, out.graspable, config.grasping);
    if (c.segments.empty())
      throw ComponentError(ErrorCode::kInfeasibleComponent, op.active,
                           where + ": no finger length on the ladder is feasible for component '" + op.active + "'");
    return c;
  });
  return out;
}

SolveResult solve_constraints(const std::vector<ComponentConstraint>& constraints, const PipelineConfig& config) {
  return stage("solve", "", [&] {
    SolveResult s;
    s.bounds = compute_bounds(constraints, config.strokes, config.sampling);
    s.problem = build_coefficients(constraints, sample_params(s.bounds, config.strokes), config.cover_slack);
    s.solution = minimize_grippers(s.problem);
    return s;
  });
}

json to_json(const ComponentAnalysis& a) {
  json segs = json::array();
  for (int s = 0; s < a.model.segments.count(); ++s) {
    const SegmentFit& fit = a.model.fits.at(s);
    const PrimitiveSelection& sel = fit.selection;
    json j{{"index", s},
           {"faces", a.model.segments.faces[s].size()},
           {"cluster", a.model.segments.cluster[s]},
           {"graspable_primitive", sel.graspable}};
    if (sel.graspable) {
      j["primitive"] = to_string(sel.primitive);
      j["gripper"] = to_string(sel.gripper);
      j["fingers"] = sel.gripper == GripperType::kThreeFingerCentric ? 3 : 2;
      j["width"] = sel.width;
      j["center"] = vec(sel.center);
      j["axis"] = vec(sel.axis);
      j["height"] = sel.height;
    }
    j["hull_volume"] = sel.hull_volume;
    j["primitive_volume"] = sel.primitive_volume;
    if (fit.cylinder) {
      const auto& c = *fit.cylinder;
      j["cylinder"] = {{"point", vec(c.point)}, {"axis", vec(c.axis)}, {"radius", c.radius}, {"height", c.height},
                       {"lateral_surface_nonempty", c.lateral_surface_nonempty},
                       {"inlier_fraction", c.inlier_fraction}, {"angular_coverage_deg", c.angular_coverage_deg}};
    } else {
      j["cylinder"] = nullptr;
    }
    if (fit.box) {
      const auto& b = fit.box->box;
      json axes = json::array();
      for (int k = 0; k < 3; ++k) axes.push_back(vec(b.axes.col(k)));
      j["box"] = {{"center", vec(b.center)}, {"axes", axes}, {"half_extents", vec(b.half)},
                  {"face_nonempty", std::vector<bool>(fit.box->nonempty.begin(), fit.box->nonempty.end())}};
    } else {
      j["box"] = nullptr;
    }
    segs.push_back(std::move(j));
  }
  json excl = json::array();
  for (const auto& e : a.exclusions.applied) excl.push_back({{"segment", e.segment_index}, {"reason", e.reason}});
  return {{"mesh_sha256", a.mesh_sha256},
          {"vertices", a.model.mesh.num_vertices()},
          {"faces", a.model.mesh.num_faces()},
          {"missing_sdf", a.missing_sdf},
          {"chosen_k", a.chosen_k},
          {"segment_count", a.model.segments.count()},
          {"segments", segs},
          {"exclusions", excl},
          {"candidate_segments", a.exclusions.candidates}};
}

json to_json(const ComponentConstraint& c) {
  json segs = json::array();
  for (const auto& s : c.segments)
    segs.push_back({{"segment", s.segment},
                    {"fingers", s.fingers},
                    {"width", s.width},
                    {"length_min", s.length_min},
                    {"length_max", length_or_null(s.length_max)}});
  return {{"component", c.component}, {"segments", segs}};
}

std::vector<ComponentConstraint> constraints_from_json(const json& j) {
  std::vector<ComponentConstraint> out;
  try {
    for (const auto& cj : j) {
      ComponentConstraint c;
      c.component = cj.at("component").get<std::string>();
      for (const auto& sj : cj.at("segments")) {
        SegmentConstraint s;
        s.component = c.component;
        s.segment = sj.at("segment").get<int>();
        s.fingers = sj.at("fingers").get<int>();
        s.width = sj.at("width").get<double>();
        s.length_min = sj.at("length_min").get<double>();
        s.length_max = sj.at("length_max").is_null() ? kUnbounded : sj.at("length_max").get<double>();
        c.segments.push_back(s);
      }
      out.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad constraints document: ") + e.what());
  }
  return out;
}

json to_json(const OperationAnalysis& op, const GraspabilityParams& params) {
  json segs = json::array();
  for (const auto& s : op.segments)
    segs.push_back({{"segment", s.segment}, {"candidates", s.candidates}, {"graspable", s.graspable}});
  json graspable = json::array();
  for (const auto& g : op.graspable) {
    json lengths = json::array();
    double shortest = 0;
    for (std::size_t i = 0; i < g.feasible.size(); ++i)
      if (g.feasible[i]) {
        if (lengths.empty()) shortest = params.finger_lengths[i];
        lengths.push_back(params.finger_lengths[i]);
      }
    json contacts = json::array();
    for (const auto& c : g.witness.contacts) contacts.push_back(vec(c));
    graspable.push_back({{"segment", g.segment},
                         {"candidates", g.candidates},
                         {"feasible_finger_lengths", lengths},
                         {"witness",
                          {{"gripper", to_string(g.witness.type)},
                           {"width", g.witness.width},
                           {"contact_depth", g.witness.contact_depth},
                           {"finger_length", shortest},
                           {"pose", row_major(g.witness.pose)},
                           {"contacts", contacts}}}});
  }
  return {{"index", op.index},     {"active", op.active},         {"passive", op.passive},
          {"segments", segs},      {"graspable", graspable},      {"constraints", to_json(op.constraint)}};
}

json to_json(const GroupBounds& b) {
  return {{"fingers", b.fingers},         {"width_lower", b.width_lower},   {"width_upper", b.width_upper},
          {"length_lower", b.length_lower}, {"length_upper", b.length_upper}, {"n", b.n},
          {"m", b.m}};
}

json to_json(const SolveResult& s) {
  json bounds = json::array();
  for (const auto& b : s.bounds) bounds.push_back(to_json(b));
  json selected = json::array();
  for (int j : s.solution.selected) {
    const auto& p = s.problem.params[j];
    selected.push_back({{"param", j},
                        {"fingers", p.fingers},
                        {"width_min", p.width_min},
                        {"width_max", p.width_max},
                        {"finger_length", p.finger_length}});
  }
  json assignment = json::array();
  int ones = 0;
  for (int i = 0; i < s.problem.m(); ++i) ones += s.problem.a.row(i).cast<int>().sum();
  for (int i = 0; i < s.problem.m(); ++i) {
    const int j = s.solution.assignment[i];
    const auto it = std::find(s.solution.selected.begin(), s.solution.selected.end(), j);
    assignment.push_back({{"component", s.problem.rows[i]},
                          {"param", j},
                          {"gripper", static_cast<int>(it - s.solution.selected.begin())}});
  }
  json problem = to_json(s.problem);
  problem["ones"] = ones;
  return {{"bounds", bounds},
          {"param_count", s.problem.n()},
          {"problem", problem},
          {"cardinality", s.solution.cardinality()},
          {"selected", selected},
          {"assignment", assignment}};
}

DesignOutcome run_pipeline(const std::filesystem::path& task_path, const PipelineConfig& config,
                           const std::filesystem::path& out_dir, const DesignOptions& options) {
  DesignOutcome outcome;
  json& r = outcome.report;
  r["schema_version"] = kReportSchemaVersion;
  r["tool"] = {{"name", "gripforge"}, {"version", kToolVersion}};
  r["provenance"] = {{"config_hash", config_hash(config)}, {"seed", config.seed}, {"tool_version", kToolVersion},
                     {"task_sha256", nullptr}};
  r["config"] = to_json(config);
  r["status"] = "ok";
  r["error"] = nullptr;
  r["components"] = json::array();
  r["operations"] = json::array();
  r["optimization"] = nullptr;
  r["visuals"] = nullptr;

  AssemblyTask task;
  std::map<std::string, TriangleMesh> meshes;
  std::vector<ComponentAnalysis> analyses;
  std::vector<OperationAnalysis> operations;
  try {
    std::filesystem::create_directories(out_dir);
    task = stage("load", "", [&] { return load_assembly_task(task_path); });
    r["provenance"]["task_sha256"] = sha256_file(task_path);
    meshes = load_task_meshes(task);
    const std::optional<std::filesystem::path> cache =
        options.use_cache ? std::optional(out_dir / "cache") : std::nullopt;
    std::vector<ComponentConstraint> constraints;
    for (int i = 0; i < static_cast<int>(task.operations.size()); ++i) {
      const std::string& id = task.operations[i].active;
      analyses.push_back(analyze_component(task, id, meshes.at(id), config, cache));
      operations.push_back(evaluate_operation(task, i, meshes, analyses.back(), config));
      constraints.push_back(operations.back().constraint);
    }
    const SolveResult solved = solve_constraints(constraints, config);
    r["optimization"] = to_json(solved);
  } catch (const StageError& e) {
    outcome.exit_code = exit_code_for(e.code());
    r["status"] = e.code() == ErrorCode::kUngraspableComponent   ? "ungraspable"
                  : e.code() == ErrorCode::kInfeasibleComponent ? "infeasible"
                                                                : "error";
    r["error"] = {{"stage", e.stage()},
                  {"component", e.component().empty() ? json(nullptr) : json(e.component())},
                  {"code", to_string(e.code())},
                  {"message", e.what()}};
  } catch (const Error& e) {
    outcome.exit_code = 1;
    r["status"] = "error";
    r["error"] = {{"stage", "io"}, {"component", nullptr}, {"code", to_string(e.code())}, {"message", e.what()}};
  }

  for (const auto& c : task.components) {
    json j{{"id", c.id}, {"name", c.name}, {"role", task.is_active(c.id) ? "active" : "base"}, {"analysis", nullptr}};
    for (const auto& a : analyses)
      if (a.id == c.id) j["analysis"] = to_json(a);
    r["components"].push_back(std::move(j));
  }
  for (const auto& op : operations) r["operations"].push_back(to_json(op, config.grasping));

  if (options.export_visuals && !task.components.empty()) {
    try {
      const VisualExport v = export_visuals(task, meshes, analyses, operations, config.grasping, out_dir / "visuals");
      json files = json::array();
      for (const auto& f : v.files) files.push_back("visuals/" + f);
      r["visuals"] = {{"files", files}, {"notes", v.notes}};
    } catch (const Error& e) {
      if (outcome.exit_code == 0) outcome.exit_code = 1;
      r["visuals"] = {{"files", json::array()}, {"notes", {std::string("export failed: ") + e.what()}}};
    }
  }
  try {
    write_json(out_dir / "report.json", r);
  } catch (const Error& e) {
    std::cerr << "gripforge: " << e.what() << "\n";
    if (outcome.exit_code == 0) outcome.exit_code = 1;
  }
  return outcome;
}

}  // namespace gripforge
