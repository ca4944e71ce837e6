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

#include "gripforge/pipeline/demo.hpp"

#include <string>
#include <vector>

#include <json.hpp>

#include "gripforge/assembly/task.hpp"
#include "gripforge/core/error.hpp"
#include "gripforge/mesh/io.hpp"
#include "gripforge/mesh/shapes.hpp"
#include "gripforge/pipeline/pipeline.hpp"

namespace gripforge::demo {

using nlohmann::json;

namespace {

Rigid at(double x, double y, double z) {
  Rigid t = Rigid::Identity();
  t.translation() = Vec3(x, y, z);
  return t;
}

struct TaskWriter {
  std::filesystem::path dir;
  json components = json::array();
  json operations = json::array();
  std::vector<std::string> placed;

  void component(const std::string& id, const std::string& name, const TriangleMesh& mesh) {
    const std::string file = id + ".ply";
    write_ply(dir / file, mesh);
    components.push_back({{"id", id}, {"name", name}, {"mesh_path", file}});
  }
  void base(const std::string& id) { placed.push_back(id); }
  void insert(const std::string& id, const Rigid& before, const Rigid& after) {
    operations.push_back(
        {{"active", id}, {"passive", placed}, {"T_before", row_major(before)}, {"T_after", row_major(after)}});
    placed.push_back(id);
  }
  std::filesystem::path finish() {
    const auto path = dir / "task.json";
    write_json(path, {{"components", components}, {"operations", operations}, {"exclusions", json::array()}});
    return path;
  }
};

TaskWriter writer(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  TaskWriter w;
  w.dir = dir;
  return w;
}

}  // namespace

TriangleMesh rotor_shaft() { return shapes::stepped_shaft({{4, 40}, {20, 30}, {4, 40}}, -70, 48, 4); }

TriangleMesh rotor_housing() {
  std::vector<TriangleMesh> parts{shapes::ring(4.6, 40, -80, -30, 48, 6), shapes::ring(21, 40, -30, 0, 48, 6)};
  return TriangleMesh::merge(parts);
}

std::filesystem::path write_demo_task(const std::filesystem::path& dir) {
  TaskWriter w = writer(dir);
  w.component("base", "Base plate", shapes::box(Vec3(-60, -40, -20), Vec3(60, 40, 0), 10));
  w.component("block", "Bearing block", shapes::box(Vec3(-8, -15, 0), Vec3(8, 15, 20), 3));
  w.component("shaft", "Stepped shaft", shapes::stepped_shaft({{10, 15}, {6, 40}}, 0, 48, 3));
  w.component("sleeve", "Sleeve", shapes::ring(6.4, 14, 0, 12, 48, 3));
  w.component("cap", "Cap", shapes::cylinder(8, 0, 10, 32, 3));
  w.base("base");
  w.insert("block", at(30, 0, 60), at(30, 0, 0));
  w.insert("shaft", at(-30, 0, 80), at(-30, 0, 0));
  w.insert("sleeve", at(-30, 0, 90), at(-30, 0, 15));
  w.insert("cap", at(30, 0, 70), at(30, 0, 20));
  return w.finish();
}

std::filesystem::path write_peg_task(const std::filesystem::path& dir) {
  TaskWriter w = writer(dir);
  w.component("block", "Block", shapes::box(Vec3(-25, -25, -30), Vec3(25, 25, 0), 5));
  w.component("peg", "Peg", shapes::cylinder(6, 0, 30, 32, 3));
  w.base("block");
  w.insert("peg", at(0, 0, 60), at(0, 0, 0));
  return w.finish();
}

std::filesystem::path write_rotor_task(const std::filesystem::path& dir, bool with_housing) {
  TaskWriter w = writer(dir);
  if (with_housing) {
    w.component("housing", "Housing", rotor_housing());
    w.base("housing");
  }
  w.component("rotor", "Rotor", rotor_shaft());
  w.insert("rotor", at(0, 0, 100), Rigid::Identity());
  return w.finish();
}

std::filesystem::path write_enclosure_task(const std::filesystem::path& dir) {
  TaskWriter w = writer(dir);
  const Vec3 lo(-10, -10, -10), hi(10, 10, 10), pad = Vec3::Constant(2);
  w.component("shell", "Closed housing", shapes::box(lo - pad, hi + pad, 4));
  w.component("core", "Enclosed core", shapes::box(lo, hi, 4));
  w.base("shell");
  w.insert("core", Rigid::Identity(), Rigid::Identity());
  return w.finish();
}

}  // namespace gripforge::demo
