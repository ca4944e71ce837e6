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

#include "gripforge/mesh/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <unordered_map>

#include "gripforge/core/error.hpp"

namespace gripforge {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUnreadableFile, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

[[noreturn]] void malformed(const std::filesystem::path& path, const std::string& why) {
  throw Error(ErrorCode::kMalformedGeometry, path.string() + ": " + why);
}

struct Soup {
  std::vector<Vec3> positions;
  std::vector<std::array<int, 3>> tris;
};

Soup parse_obj(const std::string& text, const std::filesystem::path& path) {
  Soup soup;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x() >> p.y() >> p.z())) malformed(path, "bad vertex on line " + std::to_string(lineno));
      soup.positions.push_back(p);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) {
        const auto slash = tok.find('/');
        long v = 0;
        try {
          v = std::stol(tok.substr(0, slash));
        } catch (...) {
          malformed(path, "bad face index on line " + std::to_string(lineno));
        }
        const long n = static_cast<long>(soup.positions.size());
        if (v < 0) v = n + v + 1;
        if (v < 1 || v > n)
          malformed(path, "face index " + tok + " out of range on line " + std::to_string(lineno));
        idx.push_back(static_cast<int>(v - 1));
      }
      if (idx.size() < 3) malformed(path, "face with fewer than 3 vertices on line " + std::to_string(lineno));
      for (std::size_t k = 1; k + 1 < idx.size(); ++k) soup.tris.push_back({idx[0], idx[k], idx[k + 1]});
    }
  }
  return soup;
}

Soup parse_stl_ascii(const std::string& text, const std::filesystem::path& path) {
  Soup soup;
  std::istringstream in(text);
  std::string tok;
  int in_facet = 0;
  while (in >> tok) {
    tok = lower(tok);
    if (tok == "vertex") {
      Vec3 p;
      if (!(in >> p.x() >> p.y() >> p.z())) malformed(path, "bad STL vertex");
      soup.positions.push_back(p);
      ++in_facet;
    } else if (tok == "endfacet") {
      if (in_facet != 3) malformed(path, "STL facet without exactly 3 vertices");
      const int b = static_cast<int>(soup.positions.size()) - 3;
      soup.tris.push_back({b, b + 1, b + 2});
      in_facet = 0;
    }
  }
  if (in_facet != 0) malformed(path, "truncated STL facet");
  return soup;
}

Soup parse_stl_binary(const std::string& data, const std::filesystem::path& path) {
  if (data.size() < 84) malformed(path, "binary STL shorter than header");
  std::uint32_t count = 0;
  std::memcpy(&count, data.data() + 80, 4);
  if (data.size() < 84 + static_cast<std::size_t>(count) * 50)
    malformed(path, "binary STL truncated: " + std::to_string(count) + " facets declared");
  Soup soup;
  soup.positions.reserve(count * 3);
  for (std::uint32_t i = 0; i < count; ++i) {
    const char* rec = data.data() + 84 + static_cast<std::size_t>(i) * 50 + 12;
    for (int k = 0; k < 3; ++k) {
      float xyz[3];
      std::memcpy(xyz, rec + k * 12, 12);
      soup.positions.emplace_back(xyz[0], xyz[1], xyz[2]);
    }
    const int b = static_cast<int>(i) * 3;
    soup.tris.push_back({b, b + 1, b + 2});
  }
  return soup;
}

Soup parse_ply_ascii(const std::string& text, const std::filesystem::path& path) {
  struct Property {
    std::string name;
    bool is_list = false;
  };
  struct Element {
    std::string name;
    long count = 0;
    std::vector<Property> props;
  };
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || lower(line).rfind("ply", 0) != 0) malformed(path, "missing ply magic");
  std::vector<Element> elements;
  bool ascii = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "format") {
      std::string fmt;
      ls >> fmt;
      ascii = fmt == "ascii";
    } else if (tag == "element") {
      Element e;
      ls >> e.name >> e.count;
      elements.push_back(e);
    } else if (tag == "property") {
      if (elements.empty()) malformed(path, "property before element");
      Property p;
      std::string type;
      ls >> type;
      if (type == "list") {
        std::string ct, it;
        ls >> ct >> it;
        p.is_list = true;
      }
      ls >> p.name;
      elements.back().props.push_back(p);
    } else if (tag == "end_header") {
      break;
    }
  }
  if (!ascii) malformed(path, "only ASCII PLY is supported");
  Soup soup;
  for (const auto& e : elements) {
    for (long i = 0; i < e.count; ++i) {
      if (!std::getline(in, line)) malformed(path, "unexpected end of PLY body");
      std::istringstream ls(line);
      if (e.name == "vertex") {
        Vec3 p = Vec3::Zero();
        for (const auto& prop : e.props) {
          double value = 0;
          if (prop.is_list) {
            long n = 0;
            ls >> n;
            for (long k = 0; k < n; ++k) ls >> value;
            continue;
          }
          if (!(ls >> value)) malformed(path, "bad vertex record");
          if (prop.name == "x") p.x() = value;
          if (prop.name == "y") p.y() = value;
          if (prop.name == "z") p.z() = value;
        }
        soup.positions.push_back(p);
      } else if (e.name == "face") {
        for (const auto& prop : e.props) {
          if (!prop.is_list) {
            double skip;
            ls >> skip;
            continue;
          }
          long n = 0;
          if (!(ls >> n)) malformed(path, "bad face record");
          std::vector<int> idx(n);
          for (long k = 0; k < n; ++k)
            if (!(ls >> idx[k])) malformed(path, "bad face record");
          if (prop.name != "vertex_indices" && prop.name != "vertex_index") continue;
          if (n < 3) malformed(path, "face with fewer than 3 vertices");
          for (long k = 1; k + 1 < n; ++k) soup.tris.push_back({idx[0], idx[k], idx[k + 1]});
        }
      }
    }
  }
  return soup;
}

// Grid-hash welding: a point merges into an earlier point within `tol`.
struct Welder {
  explicit Welder(double tol) : tol(tol), inv(1.0 / tol) {}

  int insert(const Vec3& p) {
    const Eigen::Vector3<long long> c = (p * inv).array().floor().cast<long long>();
    if (tol > 0) {
      for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
          for (int dz = -1; dz <= 1; ++dz) {
            auto it = cells.find(hash(c.x() + dx, c.y() + dy, c.z() + dz));
            if (it == cells.end()) continue;
            for (int id : it->second)
              if ((points[id] - p).norm() <= tol) return id;
          }
    }
    const int id = static_cast<int>(points.size());
    points.push_back(p);
    cells[hash(c.x(), c.y(), c.z())].push_back(id);
    return id;
  }

  static std::uint64_t hash(long long x, long long y, long long z) {
    std::uint64_t h = 1469598103934665603ULL;
    for (long long v : {x, y, z}) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ULL;
      h ^= h >> 29;
    }
    return h;
  }

  double tol;
  double inv;
  std::vector<Vec3> points;
  std::unordered_map<std::uint64_t, std::vector<int>> cells;
};

}  // namespace

MeshFormat detect_mesh_format(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  if (ext == ".obj") return MeshFormat::kObj;
  if (ext == ".ply") return MeshFormat::kPlyAscii;
  if (ext == ".stl") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kUnreadableFile, "cannot open " + path.string());
    std::string head(512, '\0');
    in.read(head.data(), static_cast<std::streamsize>(head.size()));
    head.resize(static_cast<std::size_t>(in.gcount()));
    // "solid" headers also occur in binary files; require a facet keyword too.
    if (lower(head).rfind("solid", 0) == 0 && lower(head).find("facet") != std::string::npos)
      return MeshFormat::kStlAscii;
    return MeshFormat::kStlBinary;
  }
  throw Error(ErrorCode::kUnreadableFile, "unknown mesh extension: " + path.string());
}

LoadedMesh build_mesh(std::span<const Vec3> positions, std::span<const std::array<int, 3>> tris,
                      double weld_tol) {
  for (const auto& p : positions)
    if (!p.allFinite()) throw Error(ErrorCode::kMalformedGeometry, "non-finite vertex coordinate");
  const int n = static_cast<int>(positions.size());
  Welder welder(weld_tol);
  std::vector<int> remap(positions.size());
  for (int i = 0; i < n; ++i) remap[i] = welder.insert(positions[i]);

  LoadedMesh out;
  out.merged_vertices = n - static_cast<int>(welder.points.size());
  std::vector<std::array<int, 3>> kept;
  kept.reserve(tris.size());
  for (const auto& t : tris) {
    for (int k : t)
      if (k < 0 || k >= n)
        throw Error(ErrorCode::kMalformedGeometry, "face index " + std::to_string(k) + " out of range");
    const std::array<int, 3> w{remap[t[0]], remap[t[1]], remap[t[2]]};
    const Vec3& a = welder.points[w[0]];
    const Vec3& b = welder.points[w[1]];
    const Vec3& c = welder.points[w[2]];
    const double area = 0.5 * (b - a).cross(c - a).norm();
    if (w[0] == w[1] || w[1] == w[2] || w[0] == w[2] || !(area > TriangleMesh::kMinFaceArea)) {
      ++out.dropped_degenerate;
      continue;
    }
    kept.push_back(w);
  }
  if (kept.empty()) throw Error(ErrorCode::kEmptyMesh, "no faces left after cleanup");

  std::vector<int> compact(welder.points.size(), -1);
  TriangleMesh::FaceMatrix f(kept.size(), 3);
  std::vector<Vec3> used;
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (int k = 0; k < 3; ++k) {
      int& c = compact[kept[i][k]];
      if (c < 0) {
        c = static_cast<int>(used.size());
        used.push_back(welder.points[kept[i][k]]);
      }
      f(i, k) = c;
    }
  TriangleMesh::VertexMatrix v(used.size(), 3);
  for (std::size_t i = 0; i < used.size(); ++i) v.row(i) = used[i].transpose();
  out.mesh = TriangleMesh(std::move(v), std::move(f));
  return out;
}

LoadedMesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
  const std::string data = read_file(path);
  Soup soup;
  switch (format) {
    case MeshFormat::kObj: soup = parse_obj(data, path); break;
    case MeshFormat::kStlAscii: soup = parse_stl_ascii(data, path); break;
    case MeshFormat::kStlBinary: soup = parse_stl_binary(data, path); break;
    case MeshFormat::kPlyAscii: soup = parse_ply_ascii(data, path); break;
  }
  if (soup.tris.empty()) throw Error(ErrorCode::kEmptyMesh, path.string() + ": no faces");
  try {
    return build_mesh(soup.positions, soup.tris);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

LoadedMesh load_mesh(const std::filesystem::path& path) {
  return load_mesh(path, detect_mesh_format(path));
}

void write_ply(const std::filesystem::path& path, const TriangleMesh& mesh,
               std::span<const Rgb> face_colors) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  const bool colored = !face_colors.empty();
  if (colored && face_colors.size() != static_cast<std::size_t>(mesh.num_faces()))
    throw Error(ErrorCode::kInvalidArgument, "face color count mismatch");
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << mesh.num_vertices() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  out << "element face " << mesh.num_faces() << "\n";
  out << "property list uchar int vertex_indices\n";
  if (colored) out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out << "end_header\n";
  out << std::setprecision(17);
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const Vec3 p = mesh.vertex(v);
    out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  }
  for (int f = 0; f < mesh.num_faces(); ++f) {
    out << "3 " << mesh.faces()(f, 0) << ' ' << mesh.faces()(f, 1) << ' ' << mesh.faces()(f, 2);
    if (colored) {
      const Rgb& c = face_colors[f];
      out << ' ' << int(c.r) << ' ' << int(c.g) << ' ' << int(c.b);
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

void write_stl_binary(const std::filesystem::path& path, const TriangleMesh& mesh) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  char header[80] = {};
  std::memcpy(header, "gripforge binary stl", 20);
  out.write(header, 80);
  const std::uint32_t n = static_cast<std::uint32_t>(mesh.num_faces());
  out.write(reinterpret_cast<const char*>(&n), 4);
  for (int f = 0; f < mesh.num_faces(); ++f) {
    float rec[12];
    const Vec3 nrm = mesh.normal(f);
    for (int k = 0; k < 3; ++k) rec[k] = static_cast<float>(nrm[k]);
    for (int c = 0; c < 3; ++c) {
      const Vec3 p = mesh.corner(f, c);
      for (int k = 0; k < 3; ++k) rec[3 + c * 3 + k] = static_cast<float>(p[k]);
    }
    out.write(reinterpret_cast<const char*>(rec), sizeof(rec));
    const std::uint16_t attr = 0;
    out.write(reinterpret_cast<const char*>(&attr), 2);
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

void write_obj(const std::filesystem::path& path, const TriangleMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << std::setprecision(17);
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const Vec3 p = mesh.vertex(v);
    out << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  }
  for (int f = 0; f < mesh.num_faces(); ++f)
    out << "f " << mesh.faces()(f, 0) + 1 << ' ' << mesh.faces()(f, 1) + 1 << ' '
        << mesh.faces()(f, 2) + 1 << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

Rgb label_color(int label) {
  // Golden-angle hue walk, fixed saturation/value.
  const double h = std::fmod(0.61803398874989485 * (label + 1), 1.0) * 6.0;
  const int i = static_cast<int>(h);
  const double fr = h - i;
  const double v = 0.95, s = 0.75;
  const double p = v * (1 - s), q = v * (1 - s * fr), t = v * (1 - s * (1 - fr));
  double r = 0, g = 0, b = 0;
  switch (i % 6) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
  auto u8 = [](double x) { return static_cast<std::uint8_t>(std::lround(std::clamp(x, 0.0, 1.0) * 255)); };
  return {u8(r), u8(g), u8(b)};
}

Rgb ramp_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  auto u8 = [](double x) { return static_cast<std::uint8_t>(std::lround(std::clamp(x, 0.0, 1.0) * 255)); };
  return {u8(t), u8(1.0 - std::abs(2 * t - 1)), u8(1.0 - t)};
}

}  // namespace gripforge
