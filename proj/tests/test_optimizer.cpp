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
#include <numeric>
#include <random>

#include "gripforge/core/error.hpp"
#include "gripforge/optimizer/optimizer.hpp"

using namespace gripforge;

namespace {

ComponentConstraint component(const std::string& id, std::vector<SegmentConstraint> segs) {
  for (auto& s : segs) s.component = id;
  return {id, std::move(segs)};
}

SegmentConstraint seg(int f, double w, double lmin, double lmax = kUnbounded) {
  SegmentConstraint s;
  s.fingers = f;
  s.width = w;
  s.length_min = lmin;
  s.length_max = lmax;
  return s;
}

CoverProblem from_rows(const std::vector<std::vector<int>>& rows) {
  CoverProblem p;
  p.a = CoverMatrix::Zero(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    p.rows.push_back("c" + std::to_string(i));
    for (std::size_t j = 0; j < rows[i].size(); ++j) p.a(i, j) = rows[i][j];
  }
  return p;
}

CoverProblem random_problem(std::mt19937_64& rng, int m, int n, double density) {
  std::bernoulli_distribution bit(density);
  std::uniform_int_distribution<int> col(0, n - 1);
  CoverProblem p;
  p.a = CoverMatrix::Zero(m, n);
  for (int i = 0; i < m; ++i) {
    p.rows.push_back("c" + std::to_string(i));
    for (int j = 0; j < n; ++j) p.a(i, j) = bit(rng);
    if (p.a.row(i).isZero()) p.a(i, col(rng)) = 1;
  }
  return p;
}

}  // namespace

TEST_CASE("reference gripper quadruples obey the stroke relation") {
  const Strokes d;
  CHECK(make_gripper(2, 33, 30, d) == GripperParams{2, 0, 33, 30});
  CHECK(make_gripper(3, 22, 30, d).width_min == doctest::Approx(14).epsilon(1e-12));
  CHECK(make_gripper(3, 60.5, 30, d).width_min == doctest::Approx(52.5).epsilon(1e-12));
  CHECK(make_gripper(3, 124.9, 30, d).width_min == doctest::Approx(116.9).epsilon(1e-12));
}

TEST_CASE("width bounds") {
  const Strokes d;
  SUBCASE("range inside one stroke collapses to the maximum") {
    const auto b = compute_bounds({component("a", {seg(3, 14, 10), seg(3, 20, 10)}), component("b", {seg(3, 22, 10)})}, d);
    REQUIRE(b.size() == 1);
    CHECK(b[0].width_upper == 22);
    CHECK(b[0].width_lower == 22);
    CHECK(b[0].n == 1);
  }
  SUBCASE("wide range") {
    const auto b = compute_bounds({component("a", {seg(3, 10, 10), seg(3, 50, 10)})}, d);
    CHECK(b[0].width_upper == 50);
    CHECK(b[0].width_lower == 18);
    CHECK(b[0].n == 8);
  }
  SUBCASE("single constraint") {
    const auto b = compute_bounds({component("a", {seg(2, 30, 10)})}, d);
    REQUIRE(b.size() == 1);
    CHECK(b[0].fingers == 2);
    CHECK(b[0].width_upper == 30);
    CHECK(b[0].width_lower == 30);
  }
  SUBCASE("groups are separate and empty groups are skipped") {
    const auto b = compute_bounds({component("a", {seg(2, 30, 10), seg(3, 100, 10)}), component("b", {seg(3, 5, 20)})}, d);
    REQUIRE(b.size() == 2);
    CHECK(b[0].fingers == 2);
    CHECK(b[1].fingers == 3);
    CHECK(b[1].width_lower == 13);
    CHECK(b[1].width_upper == 100);
  }
}

TEST_CASE("finger length bounds") {
  const Strokes d;
  SUBCASE("all unbounded: upper is twice the largest lower limit") {
    const auto b = compute_bounds({component("a", {seg(2, 30, 10)}), component("b", {seg(2, 31, 40)})}, d);
    CHECK(b[0].length_lower == 10);
    CHECK(b[0].length_upper == 80);
  }
  SUBCASE("finite upper limits") {
    const auto b = compute_bounds({component("a", {seg(2, 30, 20, 60)}), component("b", {seg(2, 31, 40)})}, d);
    CHECK(b[0].length_lower == 20);
    CHECK(b[0].length_upper == 60);
  }
}

TEST_CASE("uniform grids include both endpoints") {
  CHECK(uniform_grid(18, 50, 3) == std::vector<double>{18, 34, 50});
  CHECK(uniform_grid(22, 22, 1) == std::vector<double>{22});
  const auto g = uniform_grid(0.1, 0.7, 7);
  CHECK(g.front() == 0.1);
  CHECK(g.back() == 0.7);
}

TEST_CASE("sampled params: exact count and clamped lower width") {
  const Strokes d;
  const std::vector<ComponentConstraint> cs{component("a", {seg(2, 10, 10), seg(3, 14, 10)}),
                                            component("b", {seg(2, 90, 30, 70), seg(3, 60, 20)})};
  const auto bounds = compute_bounds(cs, d, {5, 3});
  const auto params = sample_params(bounds, d);
  std::size_t expected = 0;
  for (const auto& b : bounds) expected += static_cast<std::size_t>(b.n) * b.m;
  CHECK(expected == 5 * 3 + 5 * 3);
  CHECK(params.size() == expected);
  for (const auto& p : params) {
    CHECK(p.width_min == std::max(0.0, p.width_max - d.for_fingers(p.fingers)));
    CHECK(p.width_max > 0);
    CHECK(p.finger_length > 0);
  }
  CHECK(params.front().fingers == 2);
  CHECK(params.back().fingers == 3);
}

TEST_CASE("coefficients follow the gripper conditions") {
  const auto c = seg(3, 20, 10);
  CHECK(satisfies(c, {3, 14, 22, 30}));
  CHECK_FALSE(satisfies(c, {2, 0, 33, 30}));
  CHECK_FALSE(satisfies(seg(3, 22, 10), {3, 14, 22, 30}, 0.0));
  CHECK_FALSE(satisfies(seg(3, 20, 30), {3, 14, 22, 30}, 0.0));
  CHECK_FALSE(satisfies(seg(3, 20, 10, 30), {3, 14, 22, 30}, 0.0));
  CHECK_FALSE(satisfies(seg(3, 25, 10), {3, 14, 22, 30}));
  // Grid endpoints coincide with constraint values; the slack admits them.
  CHECK(satisfies(seg(3, 22, 10), {3, 14, 22, 30}));
  CHECK(satisfies(seg(3, 14, 30), {3, 14, 22, 30}));

  SUBCASE("a component is covered through any one of its segments") {
    const auto p = build_coefficients({component("a", {seg(2, 33, 50), seg(3, 20, 10)})},
                                      {{3, 14, 22, 30}, {2, 0, 33, 30}});
    CHECK(p.a(0, 0) == 1);
    CHECK(p.a(0, 1) == 0);
  }
  SUBCASE("bounds must hold within one segment") {
    // Width from segment 0 and length from segment 1 would match; neither alone does.
    const auto p = build_coefficients({component("a", {seg(3, 20, 40), seg(3, 30, 10)})}, {{3, 14, 22, 30}});
    CHECK(p.a(0, 0) == 0);
    CHECK_THROWS_AS(require_coverable(p), ComponentError);
    try {
      require_coverable(p);
    } catch (const ComponentError& e) {
      CHECK(e.component() == "a");
      CHECK(e.code() == ErrorCode::kInfeasibleComponent);
    }
  }
}

TEST_CASE("small covers") {
  CHECK(minimize_grippers(from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).cardinality() == 3);
  CHECK(minimize_grippers(from_rows({{1}, {1}, {1}, {1}, {1}})).cardinality() == 1);
  CHECK(exhaustive_cover_oracle(from_rows({{1, 0}, {0, 1}})).cardinality == 2);
  CHECK(exhaustive_cover_oracle(from_rows({{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}})).cardinality == 1);
  const auto s = minimize_grippers(from_rows({{0, 1, 1}, {1, 0, 1}}));
  CHECK(s.selected == std::vector<int>{2});
  CHECK(s.assignment == std::vector<int>{2, 2});
}

TEST_CASE("greedy is not optimal here, the solver is") {
  // Greedy takes the 4-row column first and then needs two more.
  const auto p = from_rows({{1, 1, 0}, {1, 1, 0}, {1, 0, 1}, {1, 0, 1}, {0, 1, 0}, {0, 0, 1}});
  const auto s = minimize_grippers(p);
  CHECK(s.cardinality() == 2);
  CHECK(s.selected == std::vector<int>{1, 2});
}

TEST_CASE("infeasible and oversized problems") {
  CHECK_THROWS_AS(minimize_grippers(from_rows({{1, 0}, {0, 0}})), ComponentError);
  CoverProblem big = from_rows({std::vector<int>(21, 1)});
  try {
    exhaustive_cover_oracle(big);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kProblemTooLarge);
  }
  CHECK(minimize_grippers(big).cardinality() == 1);
}

TEST_CASE("random instances match the exhaustive oracle") {
  std::mt19937_64 rng(20261014);
  std::uniform_int_distribution<int> mdist(1, 8), ndist(1, 16);
  std::uniform_real_distribution<double> ddist(0.1, 0.9);
  int agree = 0, lex = 0;
  for (int t = 0; t < 200; ++t) {
    const auto p = random_problem(rng, mdist(rng), ndist(rng), ddist(rng));
    const auto s = minimize_grippers(p);
    const auto o = exhaustive_cover_oracle(p);
    CHECK(is_cover(p, s.selected));
    for (int i = 0; i < p.m(); ++i) CHECK(p.a(i, s.assignment[i]) == 1);
    agree += s.cardinality() == o.cardinality;
    lex += s.selected == o.selected;
  }
  CHECK(agree == 200);
  CHECK(lex == 200);
}

TEST_CASE("cardinality is invariant under column permutation and monotone in columns") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 50; ++t) {
    const auto p = random_problem(rng, 7, 12, 0.3);
    const int k = minimize_grippers(p).cardinality();
    std::vector<int> perm(p.n());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CoverProblem q = p;
    for (int j = 0; j < p.n(); ++j) q.a.col(j) = p.a.col(perm[j]);
    CHECK(minimize_grippers(q).cardinality() == k);
    CoverProblem wider = p;
    wider.a.conservativeResize(Eigen::NoChange, p.n() + 1);
    std::bernoulli_distribution bit(0.5);
    for (int i = 0; i < p.m(); ++i) wider.a(i, p.n()) = bit(rng);
    CHECK(minimize_grippers(wider).cardinality() <= k);
  }
}

TEST_CASE("problems and solutions serialise") {
  auto p = build_coefficients({component("a", {seg(3, 20, 10)})}, {{3, 14, 22, 30}});
  const auto j = to_json(p);
  CHECK(j["rows"][0] == "a");
  CHECK(j["params"][0] == nlohmann::json::array({3, 14.0, 22.0, 30.0}));
  CHECK(j["matrix"][0][0] == 1);
  const auto s = to_json(minimize_grippers(p));
  CHECK(s["cardinality"] == 1);
  CHECK(s["selected"][0] == 0);
}
