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

#include "gripforge/assembly/task.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gripforge/core/error.hpp"

namespace gripforge {

using nlohmann::json;

const Component& AssemblyTask::component(const std::string& id) const {
  for (const auto& c : components)
    if (c.id == id) return c;
  throw Error(ErrorCode::kSequenceInconsistency, "unknown component id '" + id + "'");
}

bool AssemblyTask::is_active(const std::string& id) const {
  for (const auto& op : operations)
    if (op.active == id) return true;
  return false;
}

Rigid AssemblyTask::final_pose(const std::string& id) const {
  for (const auto& op : operations)
    if (op.active == id) return op.t_after;
  return component(id).pose;
}

Rigid rigid_from_row_major(const std::vector<double>& m, const std::string& what) {
  if (m.size() != 16) throw Error(ErrorCode::kTaskFormat, what + ": expected 16 numbers");
  for (double v : m)
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonRigidTransform, what + ": non-finite entry");
  Eigen::Matrix4d h;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) h(r, c) = m[4 * r + c];
  if (std::abs(h(3, 0)) > 1e-9 || std::abs(h(3, 1)) > 1e-9 || std::abs(h(3, 2)) > 1e-9 ||
      std::abs(h(3, 3) - 1) > 1e-9)
    throw Error(ErrorCode::kNonRigidTransform, what + ": last row must be [0 0 0 1]");
  const Mat3 r = h.topLeftCorner<3, 3>();
  if (!is_rotation(r, 1e-9))
    throw Error(ErrorCode::kNonRigidTransform, what + ": rotation block is not orthonormal with det +1");
  Rigid t = Rigid::Identity();
  t.linear() = r;
  t.translation() = h.topRightCorner<3, 1>();
  return t;
}

std::vector<double> row_major(const Rigid& t) {
  const Eigen::Matrix4d h = t.matrix();
  std::vector<double> out(16);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[4 * r + c] = h(r, c);
  return out;
}

void validate_assembly_task(const AssemblyTask& task) {
  std::set<std::string> ids;
  for (const auto& c : task.components)
    if (!ids.insert(c.id).second)
      throw Error(ErrorCode::kSequenceInconsistency, "duplicate component id '" + c.id + "'");
  std::set<std::string> actives;
  for (const auto& op : task.operations) {
    if (!ids.count(op.active))
      throw Error(ErrorCode::kSequenceInconsistency, "unknown active component '" + op.active + "'");
    if (!actives.insert(op.active).second)
      throw Error(ErrorCode::kSequenceInconsistency, "component '" + op.active + "' is active twice");
  }
  // Components that are never active form the static base; they are present from the start.
  std::set<std::string> assembled;
  for (const auto& id : ids)
    if (!actives.count(id)) assembled.insert(id);
  for (std::size_t i = 0; i < task.operations.size(); ++i) {
    const auto& op = task.operations[i];
    std::set<std::string> passive;
    for (const auto& p : op.passive) {
      if (!ids.count(p))
        throw Error(ErrorCode::kSequenceInconsistency, "operation " + std::to_string(i) +
                                                           ": unknown passive component '" + p + "'");
      if (!passive.insert(p).second)
        throw Error(ErrorCode::kSequenceInconsistency,
                    "operation " + std::to_string(i) + ": passive component '" + p + "' listed twice");
    }
    if (passive != assembled) {
      std::ostringstream msg;
      msg << "operation " << i << " (" << op.active << "): passive set must be {";
      bool first = true;
      for (const auto& a : assembled) msg << (first ? "" : ", ") << a, first = false;
      msg << "}";
      throw Error(ErrorCode::kSequenceInconsistency, msg.str());
    }
    assembled.insert(op.active);
  }
}

namespace {

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw Error(ErrorCode::kTaskFormat, where + ": missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kTaskFormat, where + ": bad '" + key + "': " + e.what());
  }
}

}  // namespace

AssemblyTask parse_assembly_task(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kTaskFormat, std::string("task file does not parse: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kTaskFormat, "task file must hold an object");
  AssemblyTask task;
  for (const auto& c : field<json>(doc, "components", "task")) {
    Component comp;
    comp.id = field<std::string>(c, "id", "component");
    const std::string where = "component '" + comp.id + "'";
    comp.name = c.value("name", comp.id);
    std::filesystem::path p = field<std::string>(c, "mesh_path", where);
    comp.mesh_path = p.is_absolute() ? p : base_dir / p;
    if (!std::filesystem::is_regular_file(comp.mesh_path))
      throw Error(ErrorCode::kMissingMesh, where + ": mesh not found at " + comp.mesh_path.string());
    if (c.contains("pose")) comp.pose = rigid_from_row_major(field<std::vector<double>>(c, "pose", where), where + " pose");
    task.components.push_back(std::move(comp));
  }
  int index = 0;
  for (const auto& o : field<json>(doc, "operations", "task")) {
    const std::string where = "operation " + std::to_string(index++);
    AssemblyOperation op;
    op.active = field<std::string>(o, "active", where);
    op.passive = field<std::vector<std::string>>(o, "passive", where);
    op.t_before = rigid_from_row_major(field<std::vector<double>>(o, "T_before", where), where + " T_before");
    op.t_after = rigid_from_row_major(field<std::vector<double>>(o, "T_after", where), where + " T_after");
    task.operations.push_back(std::move(op));
  }
  if (doc.contains("exclusions")) {
    for (const auto& e : doc.at("exclusions")) {
      AffordanceExclusion ex;
      ex.component = field<std::string>(e, "component", "exclusion");
      ex.segment_index = field<int>(e, "segment_index", "exclusion");
      ex.reason = e.value("reason", std::string());
      task.exclusions.push_back(std::move(ex));
    }
  }
  validate_assembly_task(task);
  for (const auto& ex : task.exclusions) task.component(ex.component);
  return task;
}

AssemblyTask load_assembly_task(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnreadableFile, "cannot open task file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_assembly_task(ss.str(), std::filesystem::absolute(path).parent_path());
}

}  // namespace gripforge
