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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>

#include "gripforge/core/error.hpp"
#include "gripforge/mesh/ray_accelerator.hpp"
#include "gripforge/mesh/shapes.hpp"
#include "gripforge/segmentation/segments.hpp"

using namespace gripforge;

namespace {

SdfField sdf_of(const TriangleMesh& m, std::uint64_t seed = 7) {
  const RayAccelerator accel(m);
  SdfParams p;
  p.seed = seed;
  return compute_sdf(m, accel, p);
}

TriangleMesh dumbbell() { return shapes::stepped_shaft({{15, 30}, {5, 30}}, 0, 48, 2.0); }

// 0 = wide part (z < 30 and the shoulder), 1 = narrow part.
std::vector<int> dumbbell_truth(const TriangleMesh& m) {
  std::vector<int> t(m.num_faces());
  for (int f = 0; f < m.num_faces(); ++f) t[f] = m.centroid(f).z() > 30 + 1e-6 ? 1 : 0;
  return t;
}

bool is_lateral(const TriangleMesh& m, int f) { return std::abs(m.normal(f).z()) < 1e-6; }

bool edge_connected(const TriangleMesh& m, const std::vector<int>& faces, const std::vector<int>& seg_of) {
  if (faces.empty()) return false;
  std::vector<char> seen(m.num_faces(), 0);
  std::deque<int> q{faces.front()};
  seen[faces.front()] = 1;
  std::size_t count = 0;
  while (!q.empty()) {
    const int f = q.front();
    q.pop_front();
    ++count;
    for (int g : m.face_neighbors()[f])
      if (!seen[g] && seg_of[g] == seg_of[f]) {
        seen[g] = 1;
        q.push_back(g);
      }
  }
  return count == faces.size();
}

}  // namespace

TEST_CASE("sphere sdf lies within one and two radii") {
  const TriangleMesh m = shapes::icosphere(10, 4);
  REQUIRE(m.num_faces() >= 5000);
  const SdfField s = sdf_of(m);
  CHECK(s.missing_count() == 0);
  for (int f = 0; f < m.num_faces(); ++f) {
    REQUIRE(s.is_defined(f));
    CHECK(s.values[f] >= 10.0);
    CHECK(s.values[f] <= 20.0);
  }
}

TEST_CASE("slab sdf lies within one and two thicknesses away from the rim") {
  const double t = 4;
  const TriangleMesh m = shapes::box(Vec3(0, 0, 0), Vec3(100, 100, t), 4.0);
  const SdfField s = sdf_of(m);
  int interior = 0;
  for (int f = 0; f < m.num_faces(); ++f) {
    const Vec3 c = m.centroid(f);
    if (std::abs(m.normal(f).z()) < 0.5 || c.x() < 8 || c.x() > 92 || c.y() < 8 || c.y() > 92) continue;
    ++interior;
    REQUIRE(s.is_defined(f));
    CHECK(s.values[f] >= t);
    CHECK(s.values[f] <= 2 * t);
  }
  CHECK(interior > 1500);
}

TEST_CASE("sdf scales with the mesh") {
  for (const TriangleMesh& m : std::vector<TriangleMesh>{dumbbell(), shapes::icosphere(3, 3), shapes::box(Vec3(0, 0, 0), Vec3(1, 2, 3), 0.5)}) {
    const SdfField a = sdf_of(m, 11);
    const SdfField b = sdf_of(m.scaled(2.5), 11);
    for (int f = 0; f < m.num_faces(); ++f) {
      REQUIRE(a.is_defined(f) == b.is_defined(f));
      if (a.is_defined(f)) CHECK(b.values[f] == doctest::Approx(2.5 * a.values[f]).epsilon(1e-6));
    }
  }
}

TEST_CASE("sdf is invariant under rigid motion") {
  const TriangleMesh m = dumbbell();
  Rigid t = Rigid::Identity();
  t.linear() = Eigen::AngleAxisd(0.7, Vec3(1, 2, -0.5).normalized()).toRotationMatrix();
  t.translation() = Vec3(40, -12, 3);
  const SdfField a = sdf_of(m, 3);
  const SdfField b = sdf_of(m.transformed(t), 3);
  int off = 0;
  for (int f = 0; f < m.num_faces(); ++f)
    if (std::abs(a.values[f] - b.values[f]) > 1e-6 * a.values[f]) ++off;
  CHECK(off == 0);
}

TEST_CASE("sdf is deterministic and seed dependent") {
  const TriangleMesh m = shapes::icosphere(5, 2);
  CHECK(sdf_of(m, 1).values == sdf_of(m, 1).values);
  CHECK(sdf_of(m, 1).values != sdf_of(m, 2).values);
}

TEST_CASE("sdf rejects bad parameters and flags open-mesh misses") {
  const TriangleMesh m = shapes::icosphere(1, 1);
  const RayAccelerator accel(m);
  SdfParams p;
  p.cone_angle_deg = 180;
  CHECK_THROWS_AS(compute_sdf(m, accel, p), Error);
  p.cone_angle_deg = 120;
  p.rays_per_face = 0;
  CHECK_THROWS_AS(compute_sdf(m, accel, p), Error);

  // A single flat square: no ray can return, so everything is missing.
  TriangleMesh::VertexMatrix v(4, 3);
  v << 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0;
  TriangleMesh::FaceMatrix fm(2, 3);
  fm << 0, 1, 2, 0, 2, 3;
  const TriangleMesh sq(v, fm);
  SdfField s = compute_sdf(sq, RayAccelerator(sq), SdfParams{});
  CHECK(s.missing_count() == 2);
  CHECK(s.values[0] == 0.0);
  CHECK_THROWS_AS(fill_missing_sdf(sq, s), Error);
}

TEST_CASE("missing sdf values are filled from neighbours") {
  const TriangleMesh m = shapes::icosphere(1, 2);
  SdfField s;
  s.values.assign(m.num_faces(), 2.0);
  s.defined.assign(m.num_faces(), 1);
  for (int f = 0; f < m.num_faces(); f += 3) {
    s.values[f] = 0;
    s.defined[f] = 0;
  }
  fill_missing_sdf(m, s);
  CHECK(s.missing_count() == 0);
  for (double v : s.values) CHECK(v == doctest::Approx(2.0));
}

TEST_CASE("normalisation maps into the unit interval") {
  SdfField s;
  s.values = {1, 3, 7, 15};
  s.defined.assign(4, 1);
  const auto n = normalize_sdf(s);
  CHECK(n[0] == doctest::Approx(std::log(2.0) / std::log(16.0)));
  CHECK(n[3] == doctest::Approx(1.0));
  CHECK(n[1] == doctest::Approx(std::log(4.0) / std::log(16.0)));
}

TEST_CASE("em recovers two well separated normals") {
  std::mt19937_64 gen(42);
  std::normal_distribution<double> a(5, 0.5), b(50, 0.5);
  std::vector<double> x;
  std::vector<int> truth;
  for (int i = 0; i < 600; ++i) {
    x.push_back(i % 2 ? b(gen) : a(gen));
    truth.push_back(i % 2);
  }
  const SoftClustering s = soft_cluster(x, 2, 9);
  REQUIRE(s.k() == 2);
  const int lo = s.mixture.means[0] < s.mixture.means[1] ? 0 : 1;
  CHECK(s.mixture.means[lo] == doctest::Approx(5).epsilon(0.05));
  CHECK(s.mixture.means[1 - lo] == doctest::Approx(50).epsilon(0.05));
  int good = 0;
  for (int i = 0; i < 600; ++i)
    if (s.responsibilities(i, truth[i] ? 1 - lo : lo) >= 0.9) ++good;
  CHECK(good > 0.99 * 600);

  const std::vector<int> ks{2, 3, 4, 5};
  CHECK(soft_cluster_bic(x, ks, 9).k() == 2);
}

TEST_CASE("single value data gives one certain cluster") {
  const std::vector<double> x(50, 0.3);
  const SoftClustering s = soft_cluster(x, 1, 0);
  CHECK(s.k() == 1);
  CHECK(s.mixture.weights[0] == doctest::Approx(1.0));
  CHECK(s.mixture.variances[0] > 0);
  for (int i = 0; i < 50; ++i) CHECK(s.responsibilities(i, 0) == 1.0);
  CHECK_THROWS_AS(soft_cluster(x, 2, 0), Error);
  CHECK_THROWS_AS(soft_cluster(x, 0, 0), Error);
}

TEST_CASE("em stays a valid distribution and monotone when overfitting") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> a(0.2, 0.05), b(0.7, 0.1);
    std::vector<double> x;
    for (int i = 0; i < 300; ++i) x.push_back(i % 3 ? a(gen) : b(gen));
    for (int k : {1, 2, 3, 5}) {
      const SoftClustering s = soft_cluster(x, k, seed);
      for (std::size_t i = 1; i < s.log_likelihood_trace.size(); ++i)
        CHECK(s.log_likelihood_trace[i] >=
              s.log_likelihood_trace[i - 1] - 1e-9 * std::abs(s.log_likelihood_trace[i - 1]));
      double wsum = 0;
      for (int j = 0; j < k; ++j) {
        wsum += s.mixture.weights[j];
        CHECK(s.mixture.variances[j] > 0);
      }
      CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
      CHECK((s.responsibilities.array() >= 0).all());
      CHECK((s.responsibilities.array() <= 1).all());
      CHECK((s.responsibilities.rowwise().sum().array() - 1).abs().maxCoeff() < 1e-9);
      CHECK(s.log_likelihood == doctest::Approx(mixture_log_likelihood(s.mixture, x)));
    }
  }
}

TEST_CASE("max flow matches a small hand example") {
  // s->0 (3), s->1 (2), 0->1 (1), 0->t (2), 1->t (3): max flow 5.
  MaxFlow g(2);
  g.add_terminal(0, 3, 2);
  g.add_terminal(1, 2, 3);
  g.add_edge(0, 1, 1);
  CHECK(g.solve() == doctest::Approx(5));

  MaxFlow h(2);
  h.add_terminal(0, 4, 0);
  h.add_edge(0, 1, 1.5);
  h.add_terminal(1, 0, 10);
  CHECK(h.solve() == doctest::Approx(1.5));
  CHECK(h.source_side(0));
  CHECK(!h.source_side(1));
}

TEST_CASE("zero smoothness reduces to argmax") {
  const TriangleMesh m = shapes::icosphere(2, 2);
  std::mt19937_64 gen(5);
  Eigen::MatrixXd p(m.num_faces(), 3);
  for (int f = 0; f < m.num_faces(); ++f) {
    for (int j = 0; j < 3; ++j) p(f, j) = std::uniform_real_distribution<double>(0, 1)(gen);
    p.row(f) /= p.row(f).sum();
  }
  HardClusterParams hp;
  hp.lambda = 0;
  const HardClustering h = hard_cluster(m, p, hp);
  for (int f = 0; f < m.num_faces(); ++f) {
    Eigen::Index j;
    p.row(f).maxCoeff(&j);
    CHECK(h.labels[f] == j);
  }
}

TEST_CASE("alpha expansion never increases the energy") {
  std::mt19937_64 gen(17);
  for (const TriangleMesh& m : std::vector<TriangleMesh>{shapes::icosphere(2, 3), dumbbell(), shapes::box(Vec3(0, 0, 0), Vec3(4, 5, 6), 1.0)}) {
    for (int k : {2, 4}) {
      Eigen::MatrixXd p(m.num_faces(), k);
      for (int f = 0; f < m.num_faces(); ++f) {
        for (int j = 0; j < k; ++j) p(f, j) = std::uniform_real_distribution<double>(0, 1)(gen);
        p.row(f) /= p.row(f).sum();
      }
      HardClusterParams hp;
      hp.lambda = 1.0;
      const HardClustering h = hard_cluster(m, p, hp);
      for (std::size_t i = 1; i < h.energy_trace.size(); ++i)
        CHECK(h.energy_trace[i] <= h.energy_trace[i - 1]);
      const double e = labeling_energy(m, p, h.labels, hp);
      CHECK(e == doctest::Approx(h.energy_trace.back()));
      std::vector<int> argmax(m.num_faces());
      for (int f = 0; f < m.num_faces(); ++f) {
        Eigen::Index j;
        p.row(f).maxCoeff(&j);
        argmax[f] = static_cast<int>(j);
      }
      CHECK(e <= labeling_energy(m, p, argmax, hp));
      CHECK(e < labeling_energy(m, p, argmax, hp));  // random speckle always leaves room
    }
  }
}

TEST_CASE("speckle noise is smoothed back to the clean labeling") {
  const TriangleMesh m = dumbbell();
  const std::vector<int> truth = dumbbell_truth(m);
  const int nf = m.num_faces();
  Eigen::MatrixXd clean(nf, 2), noisy(nf, 2);
  for (int f = 0; f < nf; ++f) clean.row(f) = truth[f] ? Eigen::RowVector2d(0.1, 0.9) : Eigen::RowVector2d(0.9, 0.1);
  noisy = clean;
  std::mt19937_64 gen(23);
  std::vector<int> idx(nf);
  for (int f = 0; f < nf; ++f) idx[f] = f;
  std::shuffle(idx.begin(), idx.end(), gen);
  for (int i = 0; i < nf / 20; ++i) noisy.row(idx[i]) = clean.row(idx[i]).reverse();

  HardClusterParams zero;
  zero.lambda = 0;
  const std::vector<int> reference = hard_cluster(m, clean, zero).labels;
  CHECK(reference == truth);
  CHECK(hard_cluster(m, noisy, zero).labels != reference);

  HardClusterParams hp;
  hp.lambda = 0.5;
  CHECK(hard_cluster(m, noisy, hp).labels == reference);
}

TEST_CASE("segments follow connectivity") {
  const TriangleMesh a = shapes::box(Vec3(0, 0, 0), Vec3(1, 1, 1));
  const TriangleMesh b = shapes::box(Vec3(3, 0, 0), Vec3(4, 1, 1));
  const TriangleMesh both = TriangleMesh::merge(std::vector<TriangleMesh>{a, b});
  SegmentLabeling s = split_into_segments(both, std::vector<int>(both.num_faces(), 0));
  CHECK(s.count() == 2);
  CHECK(s.faces[0].size() == 12);
  CHECK(s.faces[1].size() == 12);

  const TriangleMesh sphere = shapes::icosphere(1, 2);
  s = split_into_segments(sphere, std::vector<int>(sphere.num_faces(), 3));
  REQUIRE(s.count() == 1);
  CHECK(s.cluster[0] == 3);
  CHECK(static_cast<int>(s.faces[0].size()) == sphere.num_faces());
}

TEST_CASE("random labelings split into connected, ordered partitions") {
  const TriangleMesh m = shapes::icosphere(1, 3);
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> labels(m.num_faces());
    // Blobby labels: nearest of a few random centres.
    std::vector<Vec3> centres;
    for (int c = 0; c < 6; ++c)
      centres.push_back(Vec3(std::normal_distribution<double>()(gen), std::normal_distribution<double>()(gen),
                             std::normal_distribution<double>()(gen)));
    for (int f = 0; f < m.num_faces(); ++f) {
      int best = 0;
      for (int c = 1; c < 6; ++c)
        if ((m.centroid(f) - centres[c]).norm() < (m.centroid(f) - centres[best]).norm()) best = c;
      labels[f] = best % 3;
      if (std::uniform_real_distribution<double>()(gen) < 0.02) labels[f] = (labels[f] + 1) % 3;
    }
    const SegmentLabeling s = split_into_segments(m, labels, 0.01);
    std::vector<int> seen(m.num_faces(), 0);
    int prev_first = -1;
    for (int i = 0; i < s.count(); ++i) {
      CHECK(s.faces[i].size() >= static_cast<std::size_t>(std::ceil(0.01 * m.num_faces())));
      CHECK(edge_connected(m, s.faces[i], s.segment_of_face));
      CHECK(s.faces[i].front() > prev_first);
      prev_first = s.faces[i].front();
      for (int f : s.faces[i]) {
        ++seen[f];
        CHECK(s.segment_of_face[f] == i);
      }
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  }
}

TEST_CASE("dumbbell segments separate the two cylinders") {
  const TriangleMesh m = dumbbell();
  SegmentationParams p;
  p.sdf.seed = 1;
  const SegmentationResult r = segment_mesh(m, p);
  CHECK(r.segments.count() >= 2);
  const std::vector<int> truth = dumbbell_truth(m);
  for (int part = 0; part < 2; ++part) {
    std::map<int, int> votes;
    int lateral = 0;
    for (int f = 0; f < m.num_faces(); ++f)
      if (truth[f] == part && is_lateral(m, f)) {
        ++votes[r.segments.segment_of_face[f]];
        ++lateral;
      }
    int top = 0;
    for (const auto& [seg, n] : votes) top = std::max(top, n);
    CHECK(top >= 0.95 * lateral);
  }
  // Majority segments differ between the two parts.
  CHECK(r.segments.segment_of_face[0] != r.segments.segment_of_face[m.num_faces() - 1]);

  const SegmentationResult again = segment_mesh(m, p);
  CHECK(again.segments.segment_of_face == r.segments.segment_of_face);
}
