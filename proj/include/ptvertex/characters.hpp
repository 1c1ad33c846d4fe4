#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <utility>

#include "ptvertex/boxconfig.hpp"
#include "ptvertex/laurent.hpp"
#include "ptvertex/partitions.hpp"

namespace ptvertex {

/// Redistributed vertex character: a finite twisted Laurent polynomial
/// recording the virtual tangent data of one fixed-locus component.
struct VertexCharacter {
  LaurentPolyT terms;
  LegTriple legs;
  int dimension = 0;
};

/// Edge character: finite Laurent polynomial attached to a framed edge.
struct EdgeCharacter {
  LaurentPolyT terms;
  std::pair<int, int> framing{0, 0};
};

/// Cross-section generating polynomial A_i of leg `axis`: one monomial in
/// the two transverse variables (in increasing axis order) per cell, so
/// that A_i/(1 - t_axis), expanded in ascending powers of t_axis, is the
/// character of the cylinder along that axis intersected with w_axis >= 0.
inline LaurentPolyT leg_section_poly(const LegTriple& legs, int axis) {
  LaurentPolyT a;
  for (auto& [p, q] : legs[axis].cells()) {
    Weight w{0, 0, 0};
    int j = 0;
    for (int i = 0; i < 3; ++i)
      if (i != axis) w[i] = (j++ == 0) ? p : q;
    a.add_term(w, 1);
  }
  return a;
}

/// Map from IIILine box weight to the twist monomial of its component:
/// restricted components carry the trivial twist, unrestricted component
/// p carries xi_p.
inline std::map<Weight, TwistExp> line_twists(const ComponentRecord& rec) {
  std::map<Weight, TwistExp> tw;
  for (auto& pc : rec.pathComponents) {
    TwistExp xi;
    if (!pc.restricted) xi[pc.id] = 1;
    for (auto& w : pc.members) tw[w] = xi;
  }
  return tw;
}

/// Box part B of the module character: IminusBox/IIBox -> t^w, IIIFull ->
/// 2 t^w, IIILine -> t^w times its component twist.
inline LaurentPolyT box_character(const ComponentRecord& rec) {
  auto tw = line_twists(rec);
  LaurentPolyT b;
  for (auto& [w, t] : rec.config.boxes) {
    switch (t) {
      case BoxTag::IIIFull: b.add_term(w, 2); break;
      case BoxTag::IIILine: b.add_term(w, 1, tw.at(w)); break;
      default: b.add_term(w, 1); break;
    }
  }
  return b;
}

/// Overlap correction D: the sum of the three cylinder characters counts a
/// weight in k cylinders k times; D subtracts the excess (k - 1) at every
/// multi-cylinder weight, all of which have non-negative coordinates.
inline LaurentPolyT overlap_correction(const LegTriple& legs) {
  LaurentPolyT d;
  int e = legs.max_extent();
  for (int x = 0; x < e; ++x)
    for (int y = 0; y < e; ++y)
      for (int z = 0; z < e; ++z) {
        Weight w{x, y, z};
        int k = classify_weight(legs, w).support_count();
        if (k >= 2) d.add_term(w, k - 1);
      }
  return d;
}

/// Finite correction H = B - D, so that the module character is
/// F = sum_i A_i/(1 - t_i) + H with each geometric factor expanded in
/// ascending powers.
inline LaurentPolyT module_character_correction(const ComponentRecord& rec) {
  return box_character(rec) - overlap_correction(rec.config.legs);
}

/// Window of the module character: all terms with every t-exponent <= N.
/// (Box weights always lie inside the window once N covers the leg
/// extent, so only the infinite legs are cut.)
inline LaurentPolyT module_character_window(const ComponentRecord& rec,
                                            int N) {
  const LegTriple& legs = rec.config.legs;
  LaurentPolyT f = box_character(rec);
  for (int x = 0; x <= N; ++x)
    for (int y = 0; y <= N; ++y)
      for (int z = 0; z <= N; ++z) {
        Weight w{x, y, z};
        if (classify_weight(legs, w).support_count() > 0) f.add_term(w, 1);
      }
  return f;
}

namespace detail_char {

/// G-polynomial of a partition placed in the variables (t_a, t_b):
///   G = -P - Pbar/(t_a t_b) + P Pbar (1-t_a)(1-t_b)/(t_a t_b)
/// with P the cell generating function of mu in those variables.
inline LaurentPolyT edge_numerator(const Partition2D& mu, int a, int b) {
  LaurentPolyT p;
  for (auto& [i, j] : mu.cells()) {
    Weight w{0, 0, 0};
    w[a] = i;
    w[b] = j;
    p.add_term(w, 1);
  }
  LaurentPolyT pb = p.bar();
  Weight minus_ab{0, 0, 0};
  minus_ab[a] = -1;
  minus_ab[b] = -1;
  LaurentPolyT inv_ab = LaurentPolyT::monomial(minus_ab);
  LaurentPolyT omta = LaurentPolyT::monomial({0, 0, 0});
  omta.add_term(unit_weight(a), -1);
  LaurentPolyT omtb = LaurentPolyT::monomial({0, 0, 0});
  omtb.add_term(unit_weight(b), -1);
  LaurentPolyT zero;
  return (zero - p) - pb * inv_ab + p * pb * omta * omtb * inv_ab;
}

/// The two non-axis coordinates in increasing order.
inline std::pair<int, int> transverse_axes(int axis) {
  switch (axis) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

}  // namespace detail_char

namespace detail_char {

/// Core of the vertex redistribution, shared by the stable-pairs and
/// ideal-sheaf characters.  With F = sum_i A_i/(1 - t_i) + H (ascending
/// expansions, A_i the cross-section polynomial of leg i and H a finite
/// correction) and the trace expression
/// V0 = F - Fbar/(t1 t2 t3) + F Fbar (1-t1)(1-t2)(1-t3)/(t1 t2 t3), the
/// redistribution adds sum_i G_i/(1 - t_i) with G_i the edge numerator of
/// leg i in its transverse variables.  Everything is computed over the
/// common denominator (1-t1)(1-t2)(1-t3) and divided out exactly; the
/// division succeeding certifies that V is a genuine Laurent polynomial.
inline LaurentPolyT redistribute(const LegTriple& legs,
                                 const LaurentPolyT& H) {
  LaurentPolyT delta = delta_full();
  std::array<LaurentPolyT, 3> A, D;
  for (int i = 0; i < 3; ++i) {
    A[i] = leg_section_poly(legs, i);
    D[i] = delta_skip(i);
  }

  // Numerators of F and Fbar over the common denominator: the ascending
  // expansion of 1/(1 - t_i^{-1}) is -t_i/(1 - t_i).
  LaurentPolyT numF = H * delta;
  LaurentPolyT numFbar = H.bar() * delta;
  for (int i = 0; i < 3; ++i) {
    numF = numF + A[i] * D[i];
    LaurentPolyT mt;  // -t_i
    mt.add_term(unit_weight(i), -1);
    numFbar = numFbar + mt * A[i].bar() * D[i];
  }

  LaurentPolyT tinv = LaurentPolyT::monomial({-1, -1, -1});
  // W = V * Delta.
  LaurentPolyT w = numF - numFbar * tinv + numF * numFbar * tinv;
  for (int i = 0; i < 3; ++i) {
    auto [a, b] = transverse_axes(i);
    w = w + edge_numerator(legs[i], a, b) * D[i];
  }
  return w.div_one_minus_t(0).div_one_minus_t(1).div_one_minus_t(2);
}

}  // namespace detail_char

/// Redistributed vertex character V of a fixed-locus component.
inline VertexCharacter redistributed_vertex_character(
    const ComponentRecord& rec) {
  VertexCharacter v;
  v.terms = detail_char::redistribute(rec.config.legs,
                                      module_character_correction(rec));
  v.legs = rec.config.legs;
  v.dimension = rec.dimension;
  return v;
}

/// Edge characters of a framed edge partition: the numerator G (in t2, t3)
/// and E = t1^{-1} G(t2,t3)/(1 - t1^{-1}) - G(t2 t1^{-m}, t3 t1^{-m'})/
/// (1 - t1^{-1}).  Rewriting 1/(1 - t1^{-1}) = -t1/(1 - t1) gives
/// E = (t1 G(t2 t1^{-m}, t3 t1^{-m'}) - G(t2, t3)) / (1 - t1), and the
/// exact division certifies that E is a finite Laurent polynomial.
inline std::pair<LaurentPolyT, EdgeCharacter> edge_characters(
    const Partition2D& mu, std::pair<int, int> framing) {
  LaurentPolyT g = detail_char::edge_numerator(mu, 1, 2);
  auto [m, mp] = framing;
  std::array<std::array<int, 3>, 3> M{{{1, -m, -mp}, {0, 1, 0}, {0, 0, 1}}};
  LaurentPolyT t1 = LaurentPolyT::monomial({1, 0, 0});
  EdgeCharacter e;
  e.terms = (t1 * g.substitute_t(M) - g).div_one_minus_t(0);
  e.framing = framing;
  return {g, e};
}

/// Constant-term functional of a finite untwisted character chi:
/// gamma = chi - chi chibar (1-t1)(1-t2)/(t1 t2), then substitute
/// t3 := (t1 t2)^{-1} and return the constant term.
inline long con_constant(const LaurentPolyT& chi) {
  for (auto& [k, c] : chi.terms())
    if (!k.second.empty())
      throw std::invalid_argument("con_constant: twisted input");
  LaurentPolyT omt1 = LaurentPolyT::monomial({0, 0, 0});
  omt1.add_term({1, 0, 0}, -1);
  LaurentPolyT omt2 = LaurentPolyT::monomial({0, 0, 0});
  omt2.add_term({0, 1, 0}, -1);
  LaurentPolyT inv12 = LaurentPolyT::monomial({-1, -1, 0});
  LaurentPolyT gamma = chi - chi * chi.bar() * omt1 * omt2 * inv12;
  std::array<std::array<int, 3>, 3> M{{{1, 0, -1}, {0, 1, -1}, {0, 0, 0}}};
  return gamma.substitute_t(M).coeff({0, 0, 0});
}

/// Cut-off module character for the parity functional: the full (untwisted)
/// character of the pair module, with the infinite legs cut by the simple
/// axis-perpendicular planes w_i <= N.  Unrestricted line components count
/// one dimension like restricted ones (the cut-off forgets the label).
inline LaurentPolyT cutoff_character(const ComponentRecord& rec, int N) {
  const LegTriple& legs = rec.config.legs;
  if (N < legs.max_extent())
    throw std::invalid_argument("cutoff_character: window below leg extent");
  LaurentPolyT f;
  for (auto& [w, t] : rec.config.boxes)
    f.add_term(w, t == BoxTag::IIIFull ? 2 : 1);
  for (int x = 0; x <= N; ++x)
    for (int y = 0; y <= N; ++y)
      for (int z = 0; z <= N; ++z) {
        Weight w{x, y, z};
        if (classify_weight(legs, w).support_count() > 0) f.add_term(w, 1);
      }
  return f;
}

}  // namespace ptvertex
