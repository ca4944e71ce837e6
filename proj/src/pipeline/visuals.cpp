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

#include "gripforge/pipeline/visuals.hpp"

#include <cmath>

#include "gripforge/core/error.hpp"
#include "gripforge/mesh/io.hpp"
#include "gripforge/mesh/shapes.hpp"

namespace gripforge {

TriangleMesh cylinder_belt(const FittedCylinder& c, int sides) {
  const Vec3 u = any_orthonormal(c.axis);
  const Vec3 w = c.axis.cross(u);
  TriangleMesh::VertexMatrix v(2 * sides, 3);
  TriangleMesh::FaceMatrix f(2 * sides, 3);
  for (int i = 0; i < sides; ++i) {
    const double t = 2 * kPi * i / sides;
    const Vec3 radial = c.radius * (std::cos(t) * u + std::sin(t) * w);
    v.row(2 * i) = (c.point - 0.5 * c.height * c.axis + radial).transpose();
    v.row(2 * i + 1) = (c.point + 0.5 * c.height * c.axis + radial).transpose();
  }
  for (int i = 0; i < sides; ++i) {
    const int a = 2 * i, b = 2 * i + 1, a2 = 2 * ((i + 1) % sides), b2 = a2 + 1;
    f.row(2 * i) << a, a2, b2;
    f.row(2 * i + 1) << a, b2, b;
  }
  return TriangleMesh(std::move(v), std::move(f));
}

TriangleMesh box_mesh(const OrientedBox<double>& box) {
  const TriangleMesh local = shapes::box(-box.half, box.half);
  TriangleMesh::VertexMatrix v = local.vertices();
  for (int i = 0; i < v.rows(); ++i) v.row(i) = (box.axes * local.vertex(i) + box.center).transpose();
  return local.with_vertices(std::move(v));
}

namespace {

struct Scene {
  std::vector<TriangleMesh> parts;
  std::vector<Rgb> colors;

  void add(TriangleMesh m, Rgb c) {
    colors.insert(colors.end(), m.num_faces(), c);
    parts.push_back(std::move(m));
  }
  void write(const std::filesystem::path& path) const {
    write_ply(path, TriangleMesh::merge(parts), colors);
  }
};

const ComponentAnalysis* find(const std::vector<ComponentAnalysis>& as, const std::string& id) {
  for (const auto& a : as)
    if (a.id == id) return &a;
  return nullptr;
}

}  // namespace

VisualExport export_visuals(const AssemblyTask& task, const std::map<std::string, TriangleMesh>& meshes,
                            const std::vector<ComponentAnalysis>& analyses,
                            const std::vector<OperationAnalysis>& operations, const GraspabilityParams& params,
                            const std::filesystem::path& dir) {
  VisualExport out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());

  for (const auto& a : analyses) {
    std::vector<Rgb> colors(a.model.mesh.num_faces());
    for (int f = 0; f < a.model.mesh.num_faces(); ++f) colors[f] = label_color(a.model.segments.segment_of_face[f]);
    const std::string seg_file = a.id + "_segments.ply";
    write_ply(dir / seg_file, a.model.mesh, colors);
    out.files.push_back(seg_file);

    Scene prims;
    for (const auto& fit : a.model.fits) {
      if (!fit.selection.graspable) continue;
      const Rgb c = label_color(fit.selection.segment);
      if (fit.selection.primitive == PrimitiveKind::kCylinder && fit.cylinder)
        prims.add(cylinder_belt(*fit.cylinder), c);
      else if (fit.box)
        prims.add(box_mesh(fit.box->box), c);
    }
    if (prims.parts.empty()) {
      out.notes.push_back(a.id + ": no fitted primitive, no primitive file");
    } else {
      const std::string prim_file = a.id + "_primitives.ply";
      prims.write(dir / prim_file);
      out.files.push_back(prim_file);
    }
  }

  for (std::size_t k = 0; k < task.operations.size(); ++k) {
    const AssemblyOperation& op = task.operations[k];
    const OperationAnalysis* eval = nullptr;
    for (const auto& o : operations)
      if (o.index == static_cast<int>(k)) eval = &o;
    if (!eval || eval->graspable.empty() || !find(analyses, op.active)) {
      out.notes.push_back("operation " + std::to_string(k) + " (" + op.active +
                          "): no witness grasp, no grasp scene written");
      continue;
    }
    const GraspableSegment& g = eval->graspable.front();
    int shortest = 0;
    while (shortest < static_cast<int>(g.feasible.size()) && !g.feasible[shortest]) ++shortest;
    Scene scene;
    for (const auto& p : op.passive) scene.add(meshes.at(p).transformed(task.final_pose(p)), {170, 170, 170});
    scene.add(meshes.at(op.active).transformed(op.t_after), {60, 110, 200});
    const GripperSolid solid =
        build_gripper_solid(g.witness.type, g.witness.width, params.finger_lengths.at(shortest), params.geometry)
            .posed(op.t_after * g.witness.pose);
    scene.add(solid.to_mesh(), {240, 140, 30});
    const std::string file = "op" + std::to_string(k) + "_" + op.active + "_grasp.ply";
    scene.write(dir / file);
    out.files.push_back(file);
  }
  return out;
}

}  // namespace gripforge
