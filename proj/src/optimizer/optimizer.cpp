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

#include "gripforge/optimizer/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gripforge/core/error.hpp"

namespace gripforge {

GripperParams make_gripper(int fingers, double width_max, double finger_length, const Strokes& strokes) {
  return {fingers, std::max(0.0, width_max - strokes.for_fingers(fingers)), width_max, finger_length};
}

std::vector<GroupBounds> compute_bounds(const std::vector<ComponentConstraint>& constraints, const Strokes& strokes,
                                        const SamplingCounts& counts) {
  std::vector<GroupBounds> out;
  for (int f : {2, 3}) {
    double w_min = kUnbounded, w_max = -kUnbounded, l_min = kUnbounded, l_max = -kUnbounded, lm_max = -kUnbounded;
    bool any = false, finite_upper = false;
    for (const auto& cc : constraints)
      for (const auto& s : cc.segments) {
        if (s.fingers != f) continue;
        any = true;
        w_min = std::min(w_min, s.width);
        w_max = std::max(w_max, s.width);
        l_min = std::min(l_min, s.length_min);
        l_max = std::max(l_max, s.length_min);
        lm_max = std::max(lm_max, s.length_min);
        if (std::isfinite(s.length_max)) {
          finite_upper = true;
          l_min = std::min(l_min, s.length_max);
          l_max = std::max(l_max, s.length_max);
        }
      }
    if (!any) continue;
    GroupBounds b;
    b.fingers = f;
    const double d = strokes.for_fingers(f);
    b.width_upper = w_max;
    // One stroke already spans every width when the range fits inside it.
    b.width_lower = w_max - w_min <= d + 1e-9 ? w_max : w_min + d;
    b.length_lower = l_min;
    b.length_upper = finite_upper ? l_max : 2 * lm_max;
    b.n = b.width_lower == b.width_upper ? 1 : counts.n;
    b.m = b.length_lower == b.length_upper ? 1 : counts.m;
    out.push_back(b);
  }
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
  if (count <= 1) return {hi};
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) out[k] = lo + (hi - lo) * k / (count - 1);
  out.back() = hi;
  return out;
}

std::vector<GripperParams> sample_params(const std::vector<GroupBounds>& bounds, const Strokes& strokes) {
  std::vector<GripperParams> out;
  for (const auto& b : bounds)
    for (double w : uniform_grid(b.width_lower, b.width_upper, b.n))
      for (double l : uniform_grid(b.length_lower, b.length_upper, b.m))
        out.push_back(make_gripper(b.fingers, w, l, strokes));
  return out;
}

bool satisfies(const SegmentConstraint& c, const GripperParams& p, double slack) {
  return c.fingers == p.fingers && c.length_min - slack < p.finger_length && p.finger_length < c.length_max + slack &&
         p.width_min - slack < c.width && c.width < p.width_max + slack;
}

CoverProblem build_coefficients(const std::vector<ComponentConstraint>& constraints,
                                const std::vector<GripperParams>& params, double slack) {
  CoverProblem p;
  p.params = params;
  p.a = CoverMatrix::Zero(static_cast<Eigen::Index>(constraints.size()), static_cast<Eigen::Index>(params.size()));
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    p.rows.push_back(constraints[i].component);
    for (std::size_t j = 0; j < params.size(); ++j)
      for (const auto& s : constraints[i].segments)
        if (satisfies(s, params[j], slack)) {
          p.a(i, j) = 1;
          break;
        }
  }
  return p;
}

void require_coverable(const CoverProblem& problem) {
  for (int i = 0; i < problem.m(); ++i)
    if (problem.a.row(i).isZero()) {
      const std::string id = i < static_cast<int>(problem.rows.size()) ? problem.rows[i] : std::to_string(i);
      throw ComponentError(ErrorCode::kInfeasibleComponent, id,
                           "no sampled gripper satisfies any constraint of component '" + id + "'");
    }
}

bool is_cover(const CoverProblem& problem, const std::vector<int>& columns) {
  for (int i = 0; i < problem.m(); ++i) {
    bool hit = false;
    for (int j : columns) hit = hit || problem.a(i, j);
    if (!hit) return false;
  }
  return true;
}

namespace {

// Row sets as bit vectors; M is small but not bounded by 64.
class RowSet {
 public:
  explicit RowSet(int m = 0) : words_((m + 63) / 64, 0) {}
  void set(int i) { words_[i / 64] |= 1ULL << (i % 64); }
  bool test(int i) const { return words_[i / 64] >> (i % 64) & 1; }
  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }
  int count() const {
    int c = 0;
    for (auto w : words_) c += __builtin_popcountll(w);
    return c;
  }
  RowSet minus(const RowSet& o) const {
    RowSet r = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= ~o.words_[k];
    return r;
  }
  int overlap(const RowSet& o) const {
    int c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) c += __builtin_popcountll(words_[k] & o.words_[k]);
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

class CoverSearch {
 public:
  explicit CoverSearch(const CoverProblem& p) : m_(p.m()), n_(p.n()), cols_(p.n(), RowSet(p.m())) {
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < m_; ++i)
        if (p.a(i, j)) cols_[j].set(i);
    all_ = RowSet(m_);
    for (int i = 0; i < m_; ++i) all_.set(i);
  }

  const RowSet& all() const { return all_; }

  std::vector<int> greedy() const {
    RowSet left = all_;
    std::vector<int> picked;
    while (!left.none()) {
      int best = -1, gain = 0;
      for (int j = 0; j < n_; ++j)
        if (int g = left.overlap(cols_[j]); g > gain) best = j, gain = g;
      picked.push_back(best);
      left = left.minus(cols_[best]);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
  }

  /// Smallest cover size, at most `incumbent`.
  int minimum(int incumbent) {
    best_ = incumbent;
    descend(all_, 0);
    return best_;
  }

  /// True if `left` can be covered by at most `budget` columns with index >= first.
  bool exists(const RowSet& left, int first, int budget) const {
    if (left.none()) return true;
    if (budget == 0) return false;
    int row = -1, options = std::numeric_limits<int>::max(), max_gain = 0;
    for (int j = first; j < n_; ++j) max_gain = std::max(max_gain, left.overlap(cols_[j]));
    if (max_gain == 0) return false;
    if ((left.count() + max_gain - 1) / max_gain > budget) return false;
    for (int i = 0; i < m_; ++i) {
      if (!left.test(i)) continue;
      int c = 0;
      for (int j = first; j < n_; ++j) c += cols_[j].test(i);
      if (c < options) row = i, options = c;
    }
    if (options == 0) return false;
    for (int j = first; j < n_; ++j)
      if (cols_[j].test(row) && exists(left.minus(cols_[j]), first, budget - 1)) return true;
    return false;
  }

  const RowSet& column(int j) const { return cols_[j]; }

 private:
  // Branches over the columns covering the most constrained uncovered row.
  void descend(const RowSet& left, int depth) {
    if (left.none()) {
      best_ = std::min(best_, depth);
      return;
    }
    int max_gain = 0;
    for (int j = 0; j < n_; ++j) max_gain = std::max(max_gain, left.overlap(cols_[j]));
    if (max_gain == 0) return;
    const int bound = depth + (left.count() + max_gain - 1) / max_gain;
    if (bound >= best_) return;
    int row = -1, options = std::numeric_limits<int>::max();
    for (int i = 0; i < m_; ++i) {
      if (!left.test(i)) continue;
      int c = 0;
      for (int j = 0; j < n_; ++j) c += cols_[j].test(i);
      if (c < options) row = i, options = c;
    }
    std::vector<int> branch;
    for (int j = 0; j < n_; ++j)
      if (cols_[j].test(row)) branch.push_back(j);
    std::stable_sort(branch.begin(), branch.end(),
                     [&](int a, int b) { return left.overlap(cols_[a]) > left.overlap(cols_[b]); });
    for (int j : branch) descend(left.minus(cols_[j]), depth + 1);
  }

  int m_, n_;
  std::vector<RowSet> cols_;
  RowSet all_;
  int best_ = 0;
};

std::vector<int> assign(const CoverProblem& p, const std::vector<int>& selected) {
  std::vector<int> out(p.m(), -1);
  for (int i = 0; i < p.m(); ++i)
    for (int j : selected)
      if (p.a(i, j)) {
        out[i] = j;
        break;
      }
  return out;
}

}  // namespace

CoverSolution minimize_grippers(const CoverProblem& problem) {
  require_coverable(problem);
  CoverSolution sol;
  if (problem.m() == 0) return sol;
  CoverSearch search(problem);
  const auto greedy = search.greedy();
  const int k = search.minimum(static_cast<int>(greedy.size()));
  // Lexicographically smallest cover of size k, fixed one index at a time.
  RowSet left = search.all();
  int first = 0;
  for (int picked = 0; picked < k; ++picked) {
    for (int j = first; j < problem.n(); ++j) {
      const RowSet rest = left.minus(search.column(j));
      if (search.exists(rest, j + 1, k - picked - 1)) {
        sol.selected.push_back(j);
        left = rest;
        first = j + 1;
        break;
      }
    }
  }
  sol.assignment = assign(problem, sol.selected);
  return sol;
}

OracleResult exhaustive_cover_oracle(const CoverProblem& problem) {
  const int n = problem.n();
  if (n > kOracleMaxColumns)
    throw Error(ErrorCode::kProblemTooLarge,
                "exhaustive oracle limited to " + std::to_string(kOracleMaxColumns) + " columns, got " +
                    std::to_string(n));
  if (problem.m() == 0) return {};
  for (int k = 1; k <= n; ++k) {
    // Combinations of size k in lexicographic order.
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      if (is_cover(problem, idx)) return {k, idx};
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  throw Error(ErrorCode::kInfeasibleComponent, "no subset of columns covers every row");
}

nlohmann::json to_json(const GripperParams& p) {
  return nlohmann::json::array({p.fingers, p.width_min, p.width_max, p.finger_length});
}

nlohmann::json to_json(const CoverProblem& p) {
  nlohmann::json j;
  j["rows"] = p.rows;
  j["params"] = nlohmann::json::array();
  for (const auto& g : p.params) j["params"].push_back(to_json(g));
  j["matrix"] = nlohmann::json::array();
  for (int i = 0; i < p.m(); ++i) {
    std::vector<int> row(p.n());
    for (int c = 0; c < p.n(); ++c) row[c] = p.a(i, c);
    j["matrix"].push_back(row);
  }
  return j;
}

nlohmann::json to_json(const CoverSolution& s) {
  return {{"selected", s.selected}, {"assignment", s.assignment}, {"cardinality", s.cardinality()}};
}

}  // namespace gripforge
