#pragma once

#include <array>
#include <deque>
#include <map>
#include <set>
#include <vector>

#include "ptvertex/boxconfig.hpp"
#include "ptvertex/polys.hpp"

namespace ptvertex {

/// Brute-force enumeration of T-invariant submodules, as an independent
/// oracle for enumerate_components.  No closure rules are used: a
/// candidate subspace is assigned to every weight of a bounding region
/// and closure is checked with explicit rational linear algebra on the
/// three multiplication maps.  Free line labels are solved for exactly
/// (the constraints are linear in the label vector), so each combinatorial
/// state yields either nothing, a 0-dimensional family per pinned label,
/// or a product of P^1s.
struct OracleSummary {
  std::map<std::pair<int, int>, long> families;  // (length, dim) -> count
  long anomalies = 0;  // pinned labels that are not coordinate lines
};

namespace detail_oracle {

using Vec3 = std::array<Rat, 3>;

inline Vec3 masked(const Vec3& v, const std::array<bool, 3>& sup) {
  Vec3 r{0, 0, 0};
  for (int i = 0; i < 3; ++i)
    if (sup[i]) r[i] = v[i];
  return r;
}

/// Nullspace of the functional system {phi : phi . b = 0 for all b}.
inline std::vector<Vec3> annihilator(const std::vector<Vec3>& basis) {
  // Row-reduce the basis, then back out free-variable solutions.
  std::vector<Vec3> rows = basis;
  std::array<int, 3> pivot_col{-1, -1, -1};
  int rank = 0;
  for (int col = 0; col < 3; ++col) {
    int sel = -1;
    for (size_t r = rank; r < rows.size(); ++r)
      if (rows[r][col] != 0) {
        sel = static_cast<int>(r);
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[rank], rows[sel]);
    Rat inv = 1 / rows[rank][col];
    for (int j = 0; j < 3; ++j) rows[rank][j] *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) == rank) continue;
      Rat f = rows[r][col];
      if (f == 0) continue;
      for (int j = 0; j < 3; ++j) rows[r][j] -= f * rows[rank][j];
    }
    pivot_col[rank] = col;
    ++rank;
  }
  std::vector<Vec3> null;
  for (int col = 0; col < 3; ++col) {
    bool is_pivot = false;
    for (int r = 0; r < rank; ++r) is_pivot |= pivot_col[r] == col;
    if (is_pivot) continue;
    Vec3 phi{0, 0, 0};
    phi[col] = 1;
    for (int r = 0; r < rank; ++r) phi[pivot_col[r]] = -rows[r][col];
    null.push_back(phi);
  }
  return null;
}

inline bool in_span(const std::vector<Vec3>& basis, const Vec3& v) {
  for (auto& phi : annihilator(basis)) {
    Rat dot = phi[0] * v[0] + phi[1] * v[1] + phi[2] * v[2];
    if (dot != 0) return false;
  }
  return true;
}

/// Subspace level chosen at a weight: 0 = nothing beyond the minimal
/// curve, 1 = one extra dimension (a box; for III weights, a line),
/// 2 = the full 2-dimensional III fiber.
struct State {
  std::map<Weight, int> level;
};

}  // namespace detail_oracle

inline OracleSummary brute_force_submodules(const LegTriple& legs,
                                            int maxLength) {
  using detail_oracle::Vec3;
  using detail_oracle::annihilator;
  using detail_oracle::in_span;

  OracleSummary summary;
  std::vector<Weight> region = candidate_weights(legs, maxLength);
  std::vector<WeightClass> cls;
  cls.reserve(region.size());
  for (auto& w : region) cls.push_back(classify_weight(legs, w));

  const Vec3 ones{1, 1, 1};
  auto axis_vec = [](int i) {
    Vec3 v{0, 0, 0};
    v[i] = 1;
    return v;
  };

  // Constant basis of the submodule fiber at a weight; line-level III
  // fibers are handled symbolically by the caller.
  auto const_basis = [&](const Weight& w, const WeightClass& c,
                         int level) -> std::vector<Vec3> {
    std::vector<Vec3> b;
    if (c.tag == WeightTag::Iminus) {
      if (level > 0) b.push_back(axis_vec(c.unique_support()));
      return b;  // the generator (1,1,1) never reaches negative weights
    }
    b.push_back(detail_oracle::masked(ones, c.supports));
    if (c.tag == WeightTag::II && level > 0)
      for (int i = 0; i < 3; ++i)
        if (c.supports[i]) b.push_back(axis_vec(i));
    if (c.tag == WeightTag::III && level == 2)
      for (int i = 0; i < 3; ++i) b.push_back(axis_vec(i));
    return b;
  };

  auto evaluate_state = [&](const std::map<Weight, int>& level) {
    auto lvl = [&](const Weight& w) {
      auto it = level.find(w);
      return it == level.end() ? 0 : it->second;
    };

    // Path components of line-level III weights.
    std::set<Weight> lines;
    for (auto& [w, l] : level)
      if (l == 1 && classify_weight(legs, w).tag == WeightTag::III)
        lines.insert(w);
    std::map<Weight, int> compOf;
    int ncomp = 0;
    for (auto& start : lines) {
      if (compOf.count(start)) continue;
      std::deque<Weight> q{start};
      compOf[start] = ncomp;
      while (!q.empty()) {
        Weight u = q.front();
        q.pop_front();
        for (int i = 0; i < 3; ++i)
          for (int d : {-1, 1}) {
            Weight v = u;
            v[i] += d;
            if (lines.count(v) && !compOf.count(v)) {
              compOf[v] = ncomp;
              q.push_back(v);
            }
          }
      }
      ++ncomp;
    }

    // Closure of the candidate under multiplication by x1, x2, x3.
    // Label-independent checks run directly; label-dependent checks
    // accumulate linear equations on the component's label vector.
    std::vector<std::vector<Vec3>> equations(ncomp);
    for (auto& [u, ul] : level) {
      if (ul == 0) continue;
      auto uc = classify_weight(legs, u);
      bool u_line = uc.tag == WeightTag::III && ul == 1;
      for (int i = 0; i < 3; ++i) {
        Weight w = weight_add(u, unit_weight(i));
        auto wc = classify_weight(legs, w);
        if (wc.tag == WeightTag::Iplus || wc.tag == WeightTag::Outside)
          continue;  // the quotient module vanishes there
        int wl = lvl(w);
        bool w_line = wc.tag == WeightTag::III && wl == 1;
        std::vector<Vec3> src = const_basis(u, uc, u_line ? 0 : ul);
        std::vector<Vec3> dst = const_basis(w, wc, w_line ? 0 : wl);
        if (u_line && w_line) {
          // Adjacent line boxes share a component and the map is the
          // identity on the III fiber: nothing to constrain.
          if (compOf.at(u) != compOf.at(w)) return;  // unreachable
          continue;
        }
        if (u_line) {
          // masked(c) must lie in the constant span at w.
          int p = compOf.at(u);
          for (auto& phi : annihilator(dst)) {
            Vec3 eq = detail_oracle::masked(phi, wc.supports);
            if (!(eq[0] == 0 && eq[1] == 0 && eq[2] == 0))
              equations[p].push_back(eq);
          }
          continue;
        }
        if (w_line) {
          // Each constant source vector lands in span(ones, c):
          // det(ones, c, v) = 0, linear in c with coefficients v x ones.
          int p = compOf.at(w);
          for (auto& b : src) {
            Vec3 v = detail_oracle::masked(b, wc.supports);
            Vec3 eq{v[1] - v[2], v[2] - v[0], v[0] - v[1]};
            if (!(eq[0] == 0 && eq[1] == 0 && eq[2] == 0))
              equations[p].push_back(eq);
          }
          continue;
        }
        for (auto& b : src)
          if (!in_span(dst, detail_oracle::masked(b, wc.supports))) return;
      }
    }

    // Solve each component's label space: solutions of the linear system
    // modulo the always-admissible (1,1,1) direction.
    int freeComps = 0;
    for (int p = 0; p < ncomp; ++p) {
      std::vector<Vec3> sol = annihilator(equations[p]);
      // (1,1,1) solves every equation by construction; check anyway.
      if (!in_span(sol, ones)) return;
      if (sol.size() == 3) {
        ++freeComps;
      } else if (sol.size() == 2) {
        // A single pinned label.  Flag labels that are not coordinate
        // lines: c == e_m mod (1,1,1) iff the other two entries agree.
        Vec3 c = sol[0];
        if (in_span({ones}, c)) c = sol[1];
        bool coordinate = c[0] == c[1] || c[1] == c[2] || c[0] == c[2];
        if (!coordinate) ++summary.anomalies;
      } else {
        return;  // only the generator direction survives: no line exists
      }
    }

    int len = 0;
    for (auto& [w, l] : level) len += l;
    ++summary.families[{len, freeComps}];
  };

  // Enumerate all level assignments with total length <= maxLength.
  std::map<Weight, int> level;
  auto rec = [&](auto&& self, size_t idx, int budget) -> void {
    if (idx == region.size()) {
      evaluate_state(level);
      return;
    }
    self(self, idx + 1, budget);  // level 0
    int maxLvl = cls[idx].tag == WeightTag::III ? 2 : 1;
    for (int l = 1; l <= maxLvl && l <= budget; ++l) {
      level[region[idx]] = l;
      self(self, idx + 1, budget - l);
    }
    level.erase(region[idx]);
  };
  rec(rec, 0, maxLength);
  return summary;
}

}  // namespace ptvertex
