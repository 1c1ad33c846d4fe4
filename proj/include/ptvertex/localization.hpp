#pragma once

#include <map>
#include <string>
#include <vector>

#include "ptvertex/boxconfig.hpp"
#include "ptvertex/characters.hpp"
#include "ptvertex/chow.hpp"
#include "ptvertex/errors.hpp"
#include "ptvertex/fracs.hpp"
#include "ptvertex/parallel.hpp"
#include "ptvertex/qseries.hpp"

namespace ptvertex {

/// Vertex generating series with its defining leg data.
template <class Ctx>
struct VertexSeries {
  QLaurentSeries<typename Ctx::Elem> series;
  LegTriple legs;
};

namespace detail_loc {

inline LinearForm linear_of(const Weight& w, const TwistExp& xi) {
  LinearForm f;
  for (int i = 0; i < 3; ++i) f.s[i] = w[i];
  // First Chern class of the twist monomial xi^a is -sum a_p h_p.
  for (auto& [p, a] : xi)
    if (a != 0) f.h[p] = -a;
  return f;
}

inline std::string monomial_name(const Weight& w, const TwistExp& xi) {
  LaurentPolyT m = LaurentPolyT::monomial(w, 1, xi);
  return m.str();
}

template <class Ctx>
ChowElem<typename Ctx::Elem> inverted_factor(
    const Ctx& ctx, const ChowElem<typename Ctx::Elem>& x) {
  try {
    return x.inverted();
  } catch (const cancellation_error&) {
    if constexpr (std::is_same_v<typename Ctx::Elem, Rat>)
      throw degenerate_point_error(
          "evaluation point lies on a localization hyperplane");
    else
      throw;
  }
  (void)ctx;
}

}  // namespace detail_loc

/// Localization weight with Chern-character insertions: the integral over
/// the component (a product of d projective lines) of
///   e(K-dual) * e(-moving part of V) * prod_j ch_{2+i_j}(pair class),
/// where V is the redistributed vertex character, the zero-t-weight part
/// of V is cancelled monomial-by-monomial against the tangent class
/// [T] = sum over unrestricted components p of xi_p^{-2} (trivial
/// t-weight, first Chern class 2 h_p), and the pair class is
/// F * (1-t1)(1-t2)(1-t3), a finite twisted Laurent polynomial.
template <class Ctx>
typename Ctx::Elem descendent_weight(const ComponentRecord& rec,
                                     const std::vector<int>& taus,
                                     const Ctx& ctx) {
  using E = typename Ctx::Elem;
  int d = rec.dimension;
  VertexCharacter v = redistributed_vertex_character(rec);

  // Tangent class minus the zero-weight part of V, as twist -> multiplicity.
  std::map<TwistExp, long> residual;
  for (auto& pc : rec.pathComponents)
    if (!pc.restricted) residual[TwistExp{{pc.id, -2}}] += 1;
  for (auto& [key, c] : v.terms.terms())
    if (key.first == Weight{0, 0, 0}) residual[key.second] -= c;

  // Euler class of the residual: the residue is a virtual class in the
  // K-ring of (P^1)^d, where (xi_p - 1)^2 = 0, so monomialwise
  // effectivity can fail even for a genuinely effective class (e.g.
  // 1 - 2 xi^{-1} + xi^{-2} = 0 on a single P^1).  Compute the top Chern
  // class of the virtual rank from the power sums of the Chern roots via
  // Newton's identities; for an honest sum of line-bundle monomials this
  // reduces to the product of their first Chern classes.
  long rank = 0;
  for (auto& [xi, mult] : residual) rank += mult;
  if (rank < 0)
    throw cancellation_error(
        "euler weight: zero-weight residue has negative virtual rank " +
        std::to_string(rank));
  ChowElem<E> x = ChowElem<E>::one(d);
  {
    std::vector<ChowElem<E>> power(rank + 1, ChowElem<E>(d));  // p_1..p_rank
    for (auto& [xi, mult] : residual) {
      if (mult == 0 || xi.empty()) continue;
      ChowElem<E> root =
          chow_of_linear(ctx, d, detail_loc::linear_of({0, 0, 0}, xi));
      ChowElem<E> pw = ChowElem<E>::one(d);
      for (long j = 1; j <= rank; ++j) {
        pw = pw * root;
        if (pw.is_zero()) break;  // nilpotent: higher powers vanish
        power[j] = power[j] + ChowElem<E>::scalar(d, Ctx::from_rat(mult)) * pw;
      }
    }
    std::vector<ChowElem<E>> chern(rank + 1, ChowElem<E>(d));
    chern[0] = ChowElem<E>::one(d);
    for (long k = 1; k <= rank; ++k) {
      ChowElem<E> acc(d);
      for (long j = 1; j <= k; ++j) {
        ChowElem<E> term = chern[k - j] * power[j];
        acc = j % 2 ? acc + term : acc - term;
      }
      chern[k] = ChowElem<E>::scalar(d, Ctx::from_rat(Rat(1) / Rat(k))) * acc;
    }
    x = x * chern[rank];
  }
  for (auto& [key, c] : v.terms.terms()) {
    if (key.first == Weight{0, 0, 0}) continue;
    ChowElem<E> f =
        chow_of_linear(ctx, d, detail_loc::linear_of(key.first, key.second));
    ChowElem<E> g = c > 0 ? detail_loc::inverted_factor(ctx, f) : f;
    long n = c > 0 ? c : -c;
    for (long k = 0; k < n; ++k) x = x * g;
  }

  if (!taus.empty()) {
    // ch_l of the pair class F * Delta = sum_i A_i * Delta/(1-t_i) + H * Delta.
    const LegTriple& legs = rec.config.legs;
    LaurentPolyT pairClass = module_character_correction(rec) * delta_full();
    for (int i = 0; i < 3; ++i)
      pairClass = pairClass + leg_section_poly(legs, i) * delta_skip(i);
    for (int tau : taus) {
      int l = 2 + tau;
      if (l < 0)
        throw std::invalid_argument("descendent index below -2");
      Rat fact = 1;
      for (int k = 2; k <= l; ++k) fact *= k;
      ChowElem<E> ch(d);
      for (auto& [key, c] : pairClass.terms()) {
        ChowElem<E> lin =
            chow_of_linear(ctx, d, detail_loc::linear_of(key.first, key.second));
        ChowElem<E> p = ChowElem<E>::one(d);
        for (int k = 0; k < l; ++k) p = p * lin;
        ch = ch + ChowElem<E>::scalar(d, Ctx::from_rat(Rat(c) / fact)) * p;
      }
      x = x * ch;
    }
  }
  return x.integrate();
}

template <class Ctx>
typename Ctx::Elem euler_weight(const ComponentRecord& rec, const Ctx& ctx) {
  return descendent_weight(rec, {}, ctx);
}

/// Equivariant vertex series with descendent insertions: the sum over
/// fixed-locus components of weight times q^{length + renormalized volume}.
template <class Ctx>
VertexSeries<Ctx> descendent_vertex_series(const LegTriple& legs,
                                           const std::vector<int>& taus,
                                           int order, const Ctx& ctx) {
  using E = typename Ctx::Elem;
  int offset = renormalized_volume(legs);
  if (order < offset)
    throw std::invalid_argument("order below the renormalized volume");
  auto recs = enumerate_components(legs, order - offset);
  std::vector<E> weights(recs.size(), E(0));
  parallel_for(recs.size(), [&](std::size_t i) {
    weights[i] = descendent_weight(recs[i], taus, ctx);
  });
  VertexSeries<Ctx> out{QLaurentSeries<E>(order), legs};
  for (std::size_t i = 0; i < recs.size(); ++i)
    out.series.add(recs[i].length + offset, weights[i]);
  return out;
}

template <class Ctx>
VertexSeries<Ctx> pt_vertex_series(const LegTriple& legs, int order,
                                   const Ctx& ctx) {
  return descendent_vertex_series(legs, {}, order, ctx);
}

/// Box-counting form of the series on the s1+s2+s3 = 0 locus: the sum of
/// Euler characteristics with the sign (-1)^{length + volume} folded in.
/// Exact in the 1- and 2-leg cases; conjectural with three nonempty legs.
inline QLaurentSeries<long> cy_vertex_series(const LegTriple& legs,
                                             int order) {
  int offset = renormalized_volume(legs);
  QLaurentSeries<long> s(order);
  if (order < offset) return s;
  for (auto& rec : enumerate_components(legs, order - offset)) {
    int n = rec.length + offset;
    s.add(n, (n % 2 == 0 ? 1 : -1) * rec.eulerChar);
  }
  return s;
}

inline bool cy_is_conjectural(const LegTriple& legs) {
  return !legs[0].empty() && !legs[1].empty() && !legs[2].empty();
}

struct CySpecReport {
  bool match = true;
  int failPower = 0;
};

/// Check that the symbolic series, summed per q-power and then restricted
/// to s3 = -s1 - s2, reproduces the box-counting coefficients.  The
/// restriction must happen after the sum: individual weights may have
/// poles along the locus.
inline CySpecReport cy_specialization_check(const LegTriple& legs,
                                            int order) {
  auto sym = pt_vertex_series(legs, order, FactoredEval{});
  auto cy = cy_vertex_series(legs, order);
  int offset = renormalized_volume(legs);
  CySpecReport rep;
  PolyS minus12 = PolyS() - PolyS::var(0) - PolyS::var(1);
  for (int k = offset; k <= order; ++k) {
    FracS c = sym.series.coeff(k).substitute(2, minus12);
    if (!(c == FracS(Rat(cy.coeff(k))))) {
      rep.match = false;
      rep.failPower = k;
      return rep;
    }
  }
  return rep;
}

}  // namespace ptvertex
