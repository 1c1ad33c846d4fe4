#pragma once

#include <set>
#include <vector>

#include "ptvertex/characters.hpp"
#include "ptvertex/localization.hpp"
#include "ptvertex/parallel.hpp"
#include "ptvertex/qseries.hpp"

namespace ptvertex {

/// Ideal-sheaf fixed point: a 3d partition asymptotic to the three legs,
/// stored as the finite set of boxes added on top of the minimal curve
/// (the union of the three leg cylinders).  All fixed points are isolated.
struct Partition3D {
  LegTriple legs;
  std::set<Weight> extra;

  /// Renormalized volume: box count relative to the cylinder union, with
  /// the infinite legs regularized the same way as the minimal curve.
  int size() const {
    return renormalized_volume(legs) + static_cast<int>(extra.size());
  }

  bool contains(const Weight& w) const {
    if (w[0] < 0 || w[1] < 0 || w[2] < 0) return false;
    for (int i = 0; i < 3; ++i)
      if (cylinder_contains(legs, i, w)) return true;
    return extra.count(w) != 0;
  }
};

namespace detail_dt {

/// A box set is a valid addition to the cylinder union exactly when every
/// box has all its coordinate predecessors inside the union of the
/// cylinders and the earlier boxes.  Listing candidates lexicographically
/// makes every predecessor of a box precede it, so a depth-first search
/// that only appends addable boxes enumerates each partition once.
inline void extend(const LegTriple& legs, std::vector<Weight>& cand,
                   std::size_t from, Partition3D& cur, int room,
                   std::vector<Partition3D>& out) {
  out.push_back(cur);
  if (room == 0) return;
  for (std::size_t j = from; j < cand.size(); ++j) {
    const Weight& w = cand[j];
    bool addable = true;
    for (int i = 0; i < 3 && addable; ++i) {
      if (w[i] == 0) continue;
      Weight pre = w;
      pre[i] -= 1;
      addable = cur.contains(pre);
    }
    if (!addable) continue;
    cur.extra.insert(w);
    extend(legs, cand, j + 1, cur, room - 1, out);
    cur.extra.erase(w);
  }
}

}  // namespace detail_dt

/// All 3d partitions with the given legs and at most maxExtra boxes on top
/// of the minimal curve, in increasing order of box count along each
/// search branch.
inline std::vector<Partition3D> enumerate_3d_partitions(const LegTriple& legs,
                                                        int maxExtra) {
  // Any added box lies within max leg extent + maxExtra of the origin in
  // every coordinate: pushing further along an axis needs a full chain of
  // added boxes leading out from the cylinder region.
  int W = legs.max_extent() + maxExtra;
  std::vector<Weight> cand;
  for (int x = 0; x < W; ++x)
    for (int y = 0; y < W; ++y)
      for (int z = 0; z < W; ++z) {
        Weight w{x, y, z};
        bool inCurve = false;
        for (int i = 0; i < 3; ++i)
          if (cylinder_contains(legs, i, w)) inCurve = true;
        if (!inCurve) cand.push_back(w);
      }
  // Row-major generation above is already lexicographic.
  std::vector<Partition3D> out;
  Partition3D cur{legs, {}};
  detail_dt::extend(legs, cand, 0, cur, maxExtra, out);
  return out;
}

/// Vertex character of an ideal-sheaf fixed point, through the same
/// redistribution as the stable-pairs vertex.  The finite correction is
/// H = (added boxes) - (cylinder overlap excess): summing the three
/// cylinder characters counts each weight once per cylinder, and the
/// partition itself contains it once.
inline LaurentPolyT dt_vertex_character(const Partition3D& pi) {
  LaurentPolyT H;
  for (auto& w : pi.extra) H.add_term(w, 1);
  H = H - overlap_correction(pi.legs);
  return detail_char::redistribute(pi.legs, H);
}

/// Localization weight of an isolated ideal-sheaf fixed point: the product
/// of the tangent-space weights over the obstruction weights, read off the
/// vertex character.  A surviving weight-zero term would mean a fixed part
/// of the deformation theory, which isolated points cannot have.
template <class Ctx>
typename Ctx::Elem dt_weight(const Partition3D& pi, const Ctx& ctx) {
  using E = typename Ctx::Elem;
  LaurentPolyT v = dt_vertex_character(pi);
  E r(1);
  for (auto& [key, c] : v.terms()) {
    if (key.first == Weight{0, 0, 0} || !key.second.empty())
      throw cancellation_error(
          "ideal-sheaf weight: unexpected fixed or twisted term " +
          LaurentPolyT::monomial(key.first, 1, key.second).str());
    E lin = ctx.s_part({key.first[0], key.first[1], key.first[2]});
    if (lin == E(0))
      throw degenerate_point_error(
          "evaluation point lies on a localization hyperplane");
    if (c > 0) lin = inv_of(lin);
    long n = c > 0 ? c : -c;
    for (long k = 0; k < n; ++k) r = r * lin;
  }
  return r;
}

/// Equivariant ideal-sheaf vertex series: the sum over 3d partitions of
/// the localization weight times q^(renormalized volume).
template <class Ctx>
VertexSeries<Ctx> dt_vertex_series(const LegTriple& legs, int order,
                                   const Ctx& ctx) {
  using E = typename Ctx::Elem;
  int offset = renormalized_volume(legs);
  VertexSeries<Ctx> out{QLaurentSeries<E>(order), legs};
  if (order < offset) return out;
  auto pis = enumerate_3d_partitions(legs, order - offset);
  std::vector<E> weights(pis.size(), E(0));
  parallel_for(pis.size(),
               [&](std::size_t i) { weights[i] = dt_weight(pis[i], ctx); });
  for (std::size_t i = 0; i < pis.size(); ++i)
    out.series.add(pis[i].size(), weights[i]);
  return out;
}

/// Box-counting form of the ideal-sheaf series: partitions counted with
/// sign, i.e. the generating function in -q of the number of 3d
/// partitions per renormalized volume.
inline QLaurentSeries<long> dt_cy_vertex_series(const LegTriple& legs,
                                                int order) {
  int offset = renormalized_volume(legs);
  QLaurentSeries<long> s(order);
  if (order < offset) return s;
  for (auto& pi : enumerate_3d_partitions(legs, order - offset)) {
    int n = pi.size();
    s.add(n, n % 2 == 0 ? 1 : -1);
  }
  return s;
}

struct CorrespondenceReport {
  bool match = true;
  int failPower = 0;
};

/// Box-counting correspondence: the stable-pairs series times the
/// degree-zero ideal-sheaf series (MacMahon in -q) equals the ideal-sheaf
/// series with the same legs, checked through the given q-power.
inline CorrespondenceReport dt_pt_cy_check(const LegTriple& legs, int order) {
  // The pairs series starts at the (non-positive) renormalized volume, so
  // the degree-zero factor must be expanded correspondingly further.
  int depth = order - renormalized_volume(legs);
  auto lhs = cy_vertex_series(legs, order) * macmahon_minus_q<long>(depth);
  auto rhs = dt_cy_vertex_series(legs, order);
  CorrespondenceReport rep;
  for (int k = renormalized_volume(legs); k <= order; ++k)
    if (lhs.coeff(k) != rhs.coeff(k)) {
      rep.match = false;
      rep.failPower = k;
      return rep;
    }
  return rep;
}

/// Equivariant correspondence: the stable-pairs vertex series times the
/// degree-zero ideal-sheaf series equals the ideal-sheaf vertex series
/// with the same legs, coefficient by coefficient in the chosen mode.
template <class Ctx>
CorrespondenceReport dt_pt_equivariant_check(const LegTriple& legs, int order,
                                             const Ctx& ctx) {
  auto pt = pt_vertex_series(legs, order, ctx);
  auto dt0 = dt_vertex_series(parse_legs("-;-;-"),
                              order - renormalized_volume(legs), ctx);
  auto lhs = pt.series * dt0.series;
  auto rhs = dt_vertex_series(legs, order, ctx).series;
  CorrespondenceReport rep;
  for (int k = renormalized_volume(legs); k <= order; ++k)
    if (!(lhs.coeff(k) == rhs.coeff(k))) {
      rep.match = false;
      rep.failPower = k;
      return rep;
    }
  return rep;
}

}  // namespace ptvertex
