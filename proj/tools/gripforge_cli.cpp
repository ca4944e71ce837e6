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

// gripforge: gripper design from assembly tasks.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "gripforge/core/error.hpp"
#include "gripforge/pipeline/demo.hpp"
#include "gripforge/pipeline/pipeline.hpp"
#include "gripforge/pipeline/visuals.hpp"

namespace fs = std::filesystem;
using namespace gripforge;
using nlohmann::json;

namespace {

struct Common {
  std::string task;
  std::string config;
  std::string out = "gripforge_out";
  std::optional<std::uint64_t> seed;
  bool export_visuals = false;
  bool no_cache = false;
};

void add_common(CLI::App* app, Common& c, bool needs_task = true) {
  auto* t = app->add_option("--task", c.task, "assembly task JSON");
  if (needs_task) t->required()->check(CLI::ExistingFile);
  app->add_option("--config", c.config, "pipeline config JSON (defaults when omitted)")->check(CLI::ExistingFile);
  app->add_option("--out", c.out, "output directory")->capture_default_str();
  app->add_option("--seed", c.seed, "overrides the config seed");
  app->add_flag("--export-visuals", c.export_visuals, "write PLY visualisations");
  app->add_flag("--no-cache", c.no_cache, "recompute every stage");
}

PipelineConfig make_config(const Common& c) {
  PipelineConfig cfg = c.config.empty() ? PipelineConfig{} : load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

struct Loaded {
  AssemblyTask task;
  std::map<std::string, TriangleMesh> meshes;
  std::vector<ComponentAnalysis> analyses;
};

Loaded analyze(const Common& c, const PipelineConfig& cfg, const std::string& only) {
  Loaded l;
  l.task = load_assembly_task(c.task);
  l.meshes = load_task_meshes(l.task);
  const std::optional<fs::path> cache = c.no_cache ? std::nullopt : std::optional(fs::path(c.out) / "cache");
  for (const auto& comp : l.task.components) {
    const bool wanted = only.empty() ? l.task.is_active(comp.id) : comp.id == only;
    if (wanted) l.analyses.push_back(analyze_component(l.task, comp.id, l.meshes.at(comp.id), cfg, cache));
  }
  if (!only.empty() && l.analyses.empty())
    throw Error(ErrorCode::kInvalidArgument, "unknown component '" + only + "'");
  return l;
}

const ComponentAnalysis& find_analysis(const Loaded& l, const std::string& id) {
  for (const auto& a : l.analyses)
    if (a.id == id) return a;
  throw Error(ErrorCode::kSequenceInconsistency, "component '" + id + "' was not analysed");
}

void maybe_export(const Common& c, const Loaded& l, const std::vector<OperationAnalysis>& ops,
                  const PipelineConfig& cfg) {
  if (!c.export_visuals) return;
  const auto v = export_visuals(l.task, l.meshes, l.analyses, ops, cfg.grasping, fs::path(c.out) / "visuals");
  for (const auto& f : v.files) std::cout << "wrote visuals/" << f << "\n";
  for (const auto& n : v.notes) std::cout << "note: " << n << "\n";
}

int report_error(const Error& e) {
  std::cerr << "gripforge: error (" << to_string(e.code()) << "): " << e.what() << "\n";
  if (const auto* ce = dynamic_cast<const ComponentError*>(&e)) std::cerr << "component: " << ce->component() << "\n";
  if (const auto* se = dynamic_cast<const StageError*>(&e); se && !se->component().empty())
    std::cerr << "component: " << se->component() << "\n";
  return exit_code_for(e.code());
}

int run_design(const Common& c, const std::string& task_path) {
  const PipelineConfig cfg = make_config(c);
  DesignOptions opts;
  opts.export_visuals = c.export_visuals;
  opts.use_cache = !c.no_cache;
  const DesignOutcome r = run_pipeline(task_path, cfg, c.out, opts);
  const json& rep = r.report;
  std::cout << "report: " << (fs::path(c.out) / "report.json").string() << "\n";
  if (!rep["error"].is_null()) {
    std::cerr << "gripforge: " << rep["status"].get<std::string>() << " at stage " << rep["error"]["stage"].get<std::string>();
    if (!rep["error"]["component"].is_null()) std::cerr << ", component '" << rep["error"]["component"].get<std::string>() << "'";
    std::cerr << ": " << rep["error"]["message"].get<std::string>() << "\n";
  } else {
    const json& opt = rep["optimization"];
    std::cout << "grippers: " << opt["cardinality"] << "\n";
    for (const auto& g : opt["selected"])
      std::cout << "  {" << g["fingers"] << ", " << g["width_min"] << ", " << g["width_max"] << ", "
                << g["finger_length"] << "}\n";
    for (const auto& a : opt["assignment"])
      std::cout << "  " << a["component"].get<std::string>() << " -> gripper " << a["gripper"] << "\n";
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Designs a minimal set of grippers for an assembly task"};
  app.require_subcommand(1);

  Common design_opts, seg_opts, fit_opts, grasp_opts, solve_opts, demo_opts;
  std::string component, constraints_file, demo_kind = "five";

  auto* design = app.add_subcommand("design", "run the full pipeline and write report.json");
  add_common(design, design_opts);

  auto* segment = app.add_subcommand("segment", "segment components and write segments.json");
  add_common(segment, seg_opts);
  segment->add_option("--component", component, "only this component (default: every active one)");

  auto* fit = app.add_subcommand("fit", "segment and fit primitives, write fits.json");
  add_common(fit, fit_opts);
  fit->add_option("--component", component, "only this component (default: every active one)");

  auto* grasps = app.add_subcommand("grasps", "evaluate graspable segments and constraints, write grasps.json");
  add_common(grasps, grasp_opts);

  auto* solve = app.add_subcommand("solve", "minimise the gripper set for given constraints, write solution.json");
  add_common(solve, solve_opts, false);
  solve->add_option("--constraints", constraints_file, "grasps.json from the grasps stage")->check(CLI::ExistingFile);

  auto* demo = app.add_subcommand("demo", "write a synthetic task under --out/task and run the pipeline on it");
  add_common(demo, demo_opts, false);
  demo->add_option("--kind", demo_kind, "five | peg | rotor | rotor-free | enclosure")
      ->check(CLI::IsMember({"five", "peg", "rotor", "rotor-free", "enclosure"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*design) return run_design(design_opts, design_opts.task);

    if (*segment || *fit) {
      const Common& c = *segment ? seg_opts : fit_opts;
      const PipelineConfig cfg = make_config(c);
      const Loaded l = analyze(c, cfg, component);
      json out = json::array();
      for (const auto& a : l.analyses) {
        json j = to_json(a);
        j["id"] = a.id;
        if (*segment) {
          for (auto& s : j["segments"]) s = {{"index", s["index"]}, {"faces", s["faces"]}, {"cluster", s["cluster"]}};
        }
        out.push_back(std::move(j));
        std::cout << a.id << ": " << a.model.segments.count() << " segments\n";
      }
      fs::create_directories(c.out);
      write_json(fs::path(c.out) / (*segment ? "segments.json" : "fits.json"), {{"components", out}});
      maybe_export(c, l, {}, cfg);
      return 0;
    }

    if (*grasps) {
      const PipelineConfig cfg = make_config(grasp_opts);
      const Loaded l = analyze(grasp_opts, cfg, "");
      std::vector<OperationAnalysis> ops;
      json ops_json = json::array(), cons = json::array();
      int code = 0;
      try {
        for (int i = 0; i < static_cast<int>(l.task.operations.size()); ++i) {
          const auto& id = l.task.operations[i].active;
          ops.push_back(evaluate_operation(l.task, i, l.meshes, find_analysis(l, id), cfg));
          ops_json.push_back(to_json(ops.back(), cfg.grasping));
          cons.push_back(to_json(ops.back().constraint));
          std::cout << "operation " << i << " (" << id << "): " << ops.back().graspable.size()
                    << " graspable segments\n";
        }
      } catch (const Error& e) {
        code = report_error(e);
      }
      fs::create_directories(grasp_opts.out);
      write_json(fs::path(grasp_opts.out) / "grasps.json", {{"operations", ops_json}, {"constraints", cons}});
      maybe_export(grasp_opts, l, ops, cfg);
      return code;
    }

    if (*solve) {
      const PipelineConfig cfg = make_config(solve_opts);
      std::vector<ComponentConstraint> constraints;
      if (!constraints_file.empty()) {
        std::ifstream in(constraints_file);
        const json j = json::parse(in);
        constraints = constraints_from_json(j.contains("constraints") ? j.at("constraints") : j);
      } else if (!solve_opts.task.empty()) {
        const Loaded l = analyze(solve_opts, cfg, "");
        for (int i = 0; i < static_cast<int>(l.task.operations.size()); ++i)
          constraints.push_back(
              evaluate_operation(l.task, i, l.meshes, find_analysis(l, l.task.operations[i].active), cfg).constraint);
      } else {
        throw Error(ErrorCode::kInvalidArgument, "solve needs --constraints or --task");
      }
      const SolveResult s = solve_constraints(constraints, cfg);
      fs::create_directories(solve_opts.out);
      write_json(fs::path(solve_opts.out) / "solution.json", to_json(s));
      std::cout << "grippers: " << s.solution.cardinality() << "\n";
      return 0;
    }

    if (*demo) {
      const fs::path dir = fs::path(demo_opts.out) / "task";
      fs::path task;
      if (demo_kind == "five") task = demo::write_demo_task(dir);
      else if (demo_kind == "peg") task = demo::write_peg_task(dir);
      else if (demo_kind == "rotor") task = demo::write_rotor_task(dir, true);
      else if (demo_kind == "rotor-free") task = demo::write_rotor_task(dir, false);
      else task = demo::write_enclosure_task(dir);
      std::cout << "task: " << task.string() << "\n";
      return run_design(demo_opts, task.string());
    }
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "gripforge: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
