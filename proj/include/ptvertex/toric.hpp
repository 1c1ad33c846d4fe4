#pragma once

#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptvertex/characters.hpp"
#include "ptvertex/dt.hpp"
#include "ptvertex/localization.hpp"

namespace ptvertex {

/// Toric-graph data model: vertices are torus-fixed points with three
/// local axes (slots), edges are invariant lines with normal-bundle
/// framing (m, m') and a user-declared curve-class label.  Absent slots
/// are non-compact directions.
struct ToricVertex {
  int id = 0;
  std::array<int, 3> slots{-1, -1, -1};  // edge id per local axis, -1 if open
};

struct ToricEdge {
  int id = 0;
  // Each end is (vertex id, 1-based slot).  The framing is written in the
  // chart of the first end; propagating it from the second end gives the
  // same pair, so edge orientation is pure bookkeeping.
  std::array<std::pair<int, int>, 2> ends;
  int m = 0;
  int mprime = 0;
  int classId = 0;
};

struct ToricGraph {
  std::vector<ToricVertex> vertices;
  std::vector<ToricEdge> edges;
  bool cy = false;

  const ToricVertex& vertex(int id) const {
    for (auto& v : vertices)
      if (v.id == id) return v;
    throw std::out_of_range("ToricGraph: unknown vertex id");
  }
  const ToricEdge& edge(int id) const {
    for (auto& e : edges)
      if (e.id == id) return e;
    throw std::out_of_range("ToricGraph: unknown edge id");
  }
};

inline ToricGraph toric_graph_from_json(const nlohmann::json& j) {
  ToricGraph g;
  g.cy = j.value("cy", false);
  for (auto& jv : j.at("vertices")) {
    ToricVertex v;
    v.id = jv.at("id").get<int>();
    auto& slots = jv.at("slots");
    for (int i = 0; i < 3; ++i) {
      auto key = std::to_string(i + 1);
      if (slots.contains(key) && !slots.at(key).is_null())
        v.slots[i] = slots.at(key).get<int>();
    }
    g.vertices.push_back(v);
  }
  for (auto& je : j.at("edges")) {
    ToricEdge e;
    e.id = je.at("id").get<int>();
    auto& ends = je.at("ends");
    for (int i = 0; i < 2; ++i)
      e.ends[i] = {ends.at(i).at(0).get<int>(), ends.at(i).at(1).get<int>()};
    e.m = je.at("m").get<int>();
    e.mprime = je.at("mprime").get<int>();
    e.classId = je.value("classId", 0);
    g.edges.push_back(e);
  }
  return g;
}

inline ToricGraph load_toric_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  nlohmann::json j;
  in >> j;
  return toric_graph_from_json(j);
}

/// Axis weight vectors per vertex: slot i of a vertex carries an integer
/// vector giving its torus weight in the global basis (s1, s2, s3).  The
/// first vertex of each connected component is the reference chart; the
/// chart transition along an edge at slot a with framing (m, m') sends
/// the edge axis to its negative and each transverse axis u (in
/// increasing slot order at both ends) to u - m u_a, respectively
/// u - m' u_a.
using ChartAxes = std::array<std::array<long, 3>, 3>;

namespace detail_toric {

inline std::pair<int, int> other_slots(int slot) {  // slot 0-based
  switch (slot) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

inline std::array<long, 3> combine(const ChartAxes& axes,
                                   const std::array<long, 3>& local) {
  std::array<long, 3> g{0, 0, 0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[j] += local[i] * axes[i][j];
  return g;
}

}  // namespace detail_toric

inline std::map<int, ChartAxes> chart_axes(const ToricGraph& g) {
  std::map<int, ChartAxes> out;
  for (auto& root : g.vertices) {
    if (out.count(root.id)) continue;
    out[root.id] = ChartAxes{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    std::vector<int> queue{root.id};
    while (!queue.empty()) {
      int vid = queue.back();
      queue.pop_back();
      const ToricVertex& v = g.vertex(vid);
      const ChartAxes& ax = out.at(vid);
      for (int a = 0; a < 3; ++a) {
        if (v.slots[a] < 0) continue;
        const ToricEdge& e = g.edge(v.slots[a]);
        auto [ov, oslot] =
            e.ends[0] == std::pair<int, int>{vid, a + 1} ? e.ends[1]
                                                         : e.ends[0];
        int b = oslot - 1;
        ChartAxes cand;
        auto [p, q] = detail_toric::other_slots(a);
        auto [r, s] = detail_toric::other_slots(b);
        for (int j = 0; j < 3; ++j) {
          cand[b][j] = -ax[a][j];
          cand[r][j] = ax[p][j] - e.m * ax[a][j];
          cand[s][j] = ax[q][j] - e.mprime * ax[a][j];
        }
        auto it = out.find(ov);
        if (it == out.end()) {
          out[ov] = cand;
          queue.push_back(ov);
        } else if (it->second != cand) {
          throw std::runtime_error(
              "chart_axes: inconsistent chart transitions around a cycle");
        }
      }
    }
  }
  return out;
}

struct GraphReport {
  bool valid = true;
  std::vector<std::string> violations;
};

inline GraphReport validate_graph(const ToricGraph& g) {
  GraphReport rep;
  auto bad = [&](const std::string& msg) {
    rep.valid = false;
    rep.violations.push_back(msg);
  };
  std::set<int> vids, eids;
  for (auto& v : g.vertices)
    if (!vids.insert(v.id).second) bad("duplicate vertex id");
  for (auto& e : g.edges)
    if (!eids.insert(e.id).second) bad("duplicate edge id");
  // Slot <-> end bijection.
  std::set<std::pair<int, int>> endSlots;
  for (auto& e : g.edges) {
    for (auto& [vid, slot] : e.ends) {
      if (!vids.count(vid) || slot < 1 || slot > 3) {
        bad("edge " + std::to_string(e.id) + ": end references bad slot");
        continue;
      }
      if (!endSlots.insert({vid, slot}).second)
        bad("two edge ends claim the same vertex slot");
      if (g.vertex(vid).slots[slot - 1] != e.id)
        bad("edge " + std::to_string(e.id) +
            ": vertex slot does not point back at the edge");
    }
    if (g.cy && e.m + e.mprime != -2)
      bad("edge " + std::to_string(e.id) +
          ": framing degree must be -2 on a Calabi-Yau graph");
  }
  for (auto& v : g.vertices)
    for (int i = 0; i < 3; ++i)
      if (v.slots[i] >= 0 && !endSlots.count({v.id, i + 1}))
        bad("vertex " + std::to_string(v.id) +
            ": occupied slot has no matching edge end");
  if (rep.valid) {
    try {
      chart_axes(g);
    } catch (const std::exception& ex) {
      bad(ex.what());
    }
  }
  return rep;
}

/// Assignment of an edge partition to each edge; edges not present carry
/// the empty partition.
using EdgeAssignment = std::map<int, Partition2D>;

inline const Partition2D& assigned_partition(const EdgeAssignment& a,
                                             int edgeId) {
  static const Partition2D empty;
  auto it = a.find(edgeId);
  return it == a.end() ? empty : it->second;
}

inline std::vector<Partition2D> all_partitions(int n) {
  std::vector<Partition2D> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int maxPart) -> void {
    if (left == 0) {
      out.push_back(Partition2D(cur));
      return;
    }
    for (int p = std::min(maxPart, left); p >= 1; --p) {
      cur.push_back(p);
      self(self, left - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// All edge assignments whose per-class total sizes match the degrees.
inline std::vector<EdgeAssignment> enumerate_edge_assignments(
    const ToricGraph& g, const std::map<int, int>& degrees) {
  std::map<int, std::vector<int>> classEdges;
  for (auto& e : g.edges) classEdges[e.classId].push_back(e.id);
  for (auto& [cls, d] : degrees) {
    if (d < 0) throw std::invalid_argument("negative class degree");
    if (d > 0 && !classEdges.count(cls))
      throw std::invalid_argument("degree on a class with no edges");
  }
  std::vector<EdgeAssignment> out{{}};
  for (auto& [cls, eids] : classEdges) {
    auto it = degrees.find(cls);
    int d = it == degrees.end() ? 0 : it->second;
    // Partial assignments for this class alone.
    std::vector<EdgeAssignment> cls_out;
    EdgeAssignment cur;
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
      if (i == eids.size()) {
        if (left == 0) cls_out.push_back(cur);
        return;
      }
      for (int take = 0; take <= left; ++take) {
        for (auto& mu : all_partitions(take)) {
          if (take > 0) cur[eids[i]] = mu;
          self(self, i + 1, left - take);
          cur.erase(eids[i]);
        }
      }
    };
    rec(rec, 0, d);
    std::vector<EdgeAssignment> merged;
    for (auto& base : out)
      for (auto& add : cls_out) {
        EdgeAssignment m = base;
        m.insert(add.begin(), add.end());
        merged.push_back(std::move(m));
      }
    out = std::move(merged);
  }
  return out;
}

/// Leg triple induced at a vertex: slot i carries the partition assigned
/// to the incident edge.  The transverse axes correspond in increasing
/// slot order at the two ends of every edge, so both endpoints read the
/// same partition.
inline LegTriple vertex_legs(const ToricGraph& g, const EdgeAssignment& a,
                             int vertexId) {
  const ToricVertex& v = g.vertex(vertexId);
  std::array<Partition2D, 3> mu;
  for (int i = 0; i < 3; ++i)
    if (v.slots[i] >= 0) mu[i] = assigned_partition(a, v.slots[i]);
  return LegTriple(mu[0], mu[1], mu[2]);
}

namespace detail_toric {

/// Windowed graded section count of the minimal curve with the given edge
/// partitions: Cech count over the two chart windows of each edge, with
/// the grading of a cross-section cell (a, b) twisted by the framing to
/// degree -m a - m' b, minus the overlap excess where several cylinders
/// meet at a vertex.
inline long curve_count(const ToricGraph& g, const EdgeAssignment& assign,
                        int N) {
  long total = 0;
  for (auto& e : g.edges)
    for (auto& [a, b] : assigned_partition(assign, e.id).cells()) {
      long d = -static_cast<long>(e.m) * a - static_cast<long>(e.mprime) * b;
      // Sections x1^k of the cell's line summand: regular at the first
      // chart iff k >= 0, at the second iff k <= d.
      long c0 = 0, c1 = 0;
      for (long k = -2 * N; k <= 2 * N; ++k) {
        bool first = k >= 0 && k <= N;
        bool second = k <= d && k >= d - N;
        if (first) ++c0;
        if (second) ++c0;
        if (first || second || (k >= d - N && k <= N)) ++c1;
      }
      total += c0 - c1;
    }
  for (auto& v : g.vertices)
    for (auto& [key, c] : overlap_correction(vertex_legs(g, assign, v.id)).terms())
      total -= c;
  return total;
}

}  // namespace detail_toric

/// Euler characteristic chi(O_C) of the minimal invariant curve with the
/// assigned edge partitions, by windowed graded counting; computed at two
/// window sizes and asserted independent.
inline long curve_euler_characteristic(const ToricGraph& g,
                                       const EdgeAssignment& assign) {
  int N = 2;
  for (auto& e : g.edges)
    for (auto& [a, b] : assigned_partition(assign, e.id).cells()) {
      long d = -static_cast<long>(e.m) * a - static_cast<long>(e.mprime) * b;
      N = std::max<int>(N, static_cast<int>(d < 0 ? -d : d) + 2);
    }
  long v1 = detail_toric::curve_count(g, assign, N);
  long v2 = detail_toric::curve_count(g, assign, N + 1);
  if (v1 != v2)
    throw std::logic_error("curve_euler_characteristic: window dependent");
  return v1;
}

namespace detail_toric {

inline QLaurentSeries<long> cached_cy_series(const LegTriple& legs, int order,
                                             bool dt) {
  static std::map<std::string, QLaurentSeries<long>> memo;
  static std::mutex mx;
  std::string key = (dt ? "dt:" : "pt:") + legs[0].str() + ";" +
                    legs[1].str() + ";" + legs[2].str() + "@" +
                    std::to_string(order);
  {
    std::lock_guard<std::mutex> lk(mx);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  QLaurentSeries<long> s =
      dt ? dt_cy_vertex_series(legs, order) : cy_vertex_series(legs, order);
  std::lock_guard<std::mutex> lk(mx);
  memo.emplace(key, s);
  return s;
}

/// Shared sign-and-offset assembly of Theorem-2 style box-counting sums:
/// per edge assignment, the product of per-vertex series (already carrying
/// (-1)^(local count)) is shifted by D = chi(O_C) - sum of vertex
/// renormalized volumes and weighted by (-1)^(D + sum m_e |mu_e|).
inline QLaurentSeries<long> assemble_cy(const ToricGraph& g,
                                        const std::map<int, int>& degrees,
                                        int order, bool dt) {
  auto assigns = enumerate_edge_assignments(g, degrees);
  QLaurentSeries<long> acc(order);
  for (auto& as : assigns) {
    long sumM = 0;
    for (auto& e : g.edges)
      sumM += static_cast<long>(e.m) * assigned_partition(as, e.id).size();
    std::vector<LegTriple> legs;
    long sumVol = 0;
    for (auto& v : g.vertices) {
      legs.push_back(vertex_legs(g, as, v.id));
      sumVol += renormalized_volume(legs.back());
    }
    long delta = curve_euler_characteristic(g, as) - sumVol;
    int top = order - static_cast<int>(delta);
    QLaurentSeries<long> prod = QLaurentSeries<long>::one(top);
    for (std::size_t i = 0; i < legs.size(); ++i) {
      long others = 0;
      for (std::size_t j = 0; j < legs.size(); ++j)
        if (j != i) others += renormalized_volume(legs[j]);
      prod = prod *
             cached_cy_series(legs[i], top - static_cast<int>(others), dt);
    }
    long sign = (sumM + delta) % 2 == 0 ? 1 : -1;
    for (auto& [k, c] : prod.coeffs())
      if (k <= top) acc.add(k + static_cast<int>(delta), sign * c);
  }
  return acc;
}

}  // namespace detail_toric

/// Global Calabi-Yau stable-pairs partition function Z at the given curve
/// class, as an integer Laurent series in q.  beta = 0 yields the
/// empty-curve convention value 1.
inline QLaurentSeries<long> assemble_cy_pt(const ToricGraph& g,
                                           const std::map<int, int>& degrees,
                                           int order) {
  if (!g.cy)
    throw std::invalid_argument("assemble_cy_pt: graph is not Calabi-Yau");
  return detail_toric::assemble_cy(g, degrees, order, false);
}

/// Global Calabi-Yau ideal-sheaf partition function (3d partition
/// counting per vertex).  beta = 0 yields MacMahon in -q per vertex.
inline QLaurentSeries<long> assemble_cy_dt(const ToricGraph& g,
                                           const std::map<int, int>& degrees,
                                           int order) {
  if (!g.cy)
    throw std::invalid_argument("assemble_cy_dt: graph is not Calabi-Yau");
  return detail_toric::assemble_cy(g, degrees, order, true);
}

/// Per-vertex evaluation context: local axis exponents are mapped to the
/// global weight basis through the vertex's chart axes before evaluation.
template <class Ctx>
struct ChartEval {
  const Ctx* base = nullptr;
  ChartAxes axes{};
  using Elem = typename Ctx::Elem;
  Elem s_part(const std::array<long, 3>& a) const {
    return base->s_part(detail_toric::combine(axes, a));
  }
  static Elem from_rat(const Rat& r) { return Ctx::from_rat(r); }
};

namespace detail_toric {

/// Euler class of minus the edge obstruction character, evaluated through
/// the chart of the edge's first end.
template <class Ctx>
typename Ctx::Elem edge_euler_factor(const ToricGraph& g, const ToricEdge& e,
                                     const Partition2D& mu,
                                     const std::map<int, ChartAxes>& axes,
                                     const Ctx& ctx) {
  using E = typename Ctx::Elem;
  E r(1);
  if (mu.empty()) return r;
  EdgeCharacter ec = edge_characters(mu, {e.m, e.mprime}).second;
  auto [vid, slot] = e.ends[0];
  const ChartAxes& ax = axes.at(vid);
  auto [p, q] = other_slots(slot - 1);
  ChartAxes local{ax[slot - 1], ax[p], ax[q]};
  for (auto& [key, c] : ec.terms.terms()) {
    if (!key.second.empty() || key.first == Weight{0, 0, 0})
      throw cancellation_error("edge factor: ill-formed obstruction term");
    E lin = ctx.s_part(combine(
        local, {key.first[0], key.first[1], key.first[2]}));
    if (lin == E(0))
      throw degenerate_point_error(
          "evaluation point lies on an edge localization hyperplane");
    if (c > 0) lin = inv_of(lin);
    long n = c > 0 ? c : -c;
    for (long k = 0; k < n; ++k) r = r * lin;
  }
  return r;
}

}  // namespace detail_toric

/// Global equivariant descendent partition function: the sum over edge
/// assignments matching the degrees and over all distributions of the
/// insertions tau_i(1) to the vertices of
///   q^(chi(O_C) + sum lengths) * prod_e e(-E_e) *
///   prod_v (vertex descendent series) * prod_j 1/e(T at the vertex of j),
/// each vertex computed in its own chart through the propagated axis
/// weights.
template <class Ctx>
QLaurentSeries<typename Ctx::Elem> assemble_descendents(
    const ToricGraph& g, const std::map<int, int>& degrees,
    const std::vector<int>& taus, int order, const Ctx& ctx) {
  using E = typename Ctx::Elem;
  auto axes = chart_axes(g);
  auto assigns = enumerate_edge_assignments(g, degrees);
  std::size_t V = g.vertices.size(), K = taus.size();
  QLaurentSeries<E> acc(order);
  for (auto& as : assigns) {
    E edgeFac(1);
    for (auto& e : g.edges)
      edgeFac = edgeFac * detail_toric::edge_euler_factor(
                              g, e, assigned_partition(as, e.id), axes, ctx);
    std::vector<LegTriple> legs;
    long sumVol = 0;
    for (auto& v : g.vertices) {
      legs.push_back(vertex_legs(g, as, v.id));
      sumVol += renormalized_volume(legs.back());
    }
    long delta = curve_euler_characteristic(g, as) - sumVol;
    int top = order - static_cast<int>(delta);
    if (top < sumVol) continue;  // every power lies above the truncation
    // Distributions of the k insertions to the vertices.
    std::vector<std::size_t> sigma(K, 0);
    bool done = false;
    while (!done) {
      std::vector<std::vector<int>> vertexTaus(V);
      E scalar(1);
      for (std::size_t j = 0; j < K; ++j) {
        vertexTaus[sigma[j]].push_back(taus[j]);
        const ChartAxes& ax = axes.at(g.vertices[sigma[j]].id);
        for (int i = 0; i < 3; ++i) {
          E w = ctx.s_part(ax[i]);
          if (w == E(0))
            throw degenerate_point_error(
                "evaluation point kills a fixed-point tangent weight");
          scalar = scalar * inv_of(w);
        }
      }
      QLaurentSeries<E> prod = QLaurentSeries<E>::one(top);
      for (std::size_t i = 0; i < V; ++i) {
        long others = 0;
        for (std::size_t j = 0; j < V; ++j)
          if (j != i) others += renormalized_volume(legs[j]);
        ChartEval<Ctx> cev{&ctx, axes.at(g.vertices[i].id)};
        auto s = descendent_vertex_series(
            legs[i], vertexTaus[i], top - static_cast<int>(others), cev);
        prod = prod * s.series;
      }
      for (auto& [k, c] : prod.coeffs())
        if (k <= top)
          acc.add(k + static_cast<int>(delta), edgeFac * scalar * c);
      // next distribution
      done = true;
      for (std::size_t j = 0; j < K; ++j) {
        if (++sigma[j] < V) {
          done = false;
          break;
        }
        sigma[j] = 0;
      }
    }
  }
  return acc;
}

}  // namespace ptvertex
