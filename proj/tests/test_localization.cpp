#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptvertex/localization.hpp"

using namespace ptvertex;

namespace {

/// binomial((s2+s3)/s1, k) as a reduced rational function.
FracS chain_binomial(int k) {
  FracS r(1);
  for (int j = 1; j <= k; ++j)
    r = r * FracS(PolyS::linear(-(j - 1), 1, 1)) /
        FracS(PolyS::linear(j, 0, 0));
  return r;
}

ComponentRecord chain_record(int k) {
  auto recs = enumerate_components(parse_legs("1;-;-"), k);
  REQUIRE(recs.back().length == k);
  return recs.back();
}

// Dense polynomials in a formal variable z with rational-function
// coefficients, truncated at degree L.
using ZPoly = std::vector<FracS>;

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  std::size_t L = a.size();
  ZPoly r(L, FracS(0));
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = 0; i + j < L; ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

/// exp(z * c) truncated at degree L-1.
ZPoly zexp(const FracS& c, std::size_t L) {
  ZPoly r(L, FracS(0));
  FracS term(1);
  for (std::size_t l = 0; l < L; ++l) {
    r[l] = term;
    term = term * c * FracS(Rat(1) / Rat(static_cast<long>(l) + 1));
  }
  return r;
}

ZPoly zone_minus(const ZPoly& a) {
  ZPoly r(a.size(), FracS(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = FracS(0) - a[i];
  r[0] = r[0] + FracS(1);
  return r;
}

}  // namespace

TEST_CASE("one-leg chain weights are binomial coefficients") {
  FactoredEval ctx;
  for (int k = 0; k <= 6; ++k)
    CHECK(euler_weight(chain_record(k), ctx) == chain_binomial(k));
}

TEST_CASE("one-leg vertex series is a binomial power of 1+q") {
  FactoredEval ctx;
  auto w = pt_vertex_series(parse_legs("1;-;-"), 6, ctx);
  QLaurentSeries<FracS> onePlusQ(6);
  onePlusQ.set(0, FracS(1));
  onePlusQ.set(1, FracS(1));
  FracS expo = FracS(PolyS::linear(0, 1, 1)) / FracS(PolyS::linear(1, 0, 0));
  CHECK(w.series == pow_series(onePlusQ, expo));
}

TEST_CASE("empty legs give the constant series 1") {
  FactoredEval ctx;
  auto w = pt_vertex_series(parse_legs("-;-;-"), 4, ctx);
  CHECK(w.series == QLaurentSeries<FracS>::one(4));
}

TEST_CASE("box-counting series of the three-leg example") {
  auto s = cy_vertex_series(parse_legs("1;2;1"), 0);
  CHECK(s.lowest() == -3);
  CHECK(s.coeff(-3) == -1);
  CHECK(s.coeff(-2) == 2);
  CHECK(s.coeff(-1) == -4);
  CHECK(s.coeff(0) == 7);
  CHECK(cy_is_conjectural(parse_legs("1;2;1")));
  CHECK(!cy_is_conjectural(parse_legs("1;2;-")));

  auto one = cy_vertex_series(parse_legs("1;-;-"), 5);
  for (int k = 0; k <= 5; ++k) CHECK(one.coeff(k) == (k % 2 ? -1 : 1));
  CHECK(cy_vertex_series(parse_legs("-;-;-"), 3) ==
        QLaurentSeries<long>::one(3));
}

TEST_CASE("specialization to the box-counting locus") {
  CHECK(cy_specialization_check(parse_legs("-;-;-"), 3).match);
  CHECK(cy_specialization_check(parse_legs("1;-;-"), 4).match);
  CHECK(cy_specialization_check(parse_legs("2;1;-"), 3).match);
  CHECK(cy_specialization_check(parse_legs("1;1;-"), 3).match);
}

TEST_CASE("symbolic and numeric modes agree") {
  std::array<Rat, 3> pt{Rat(97) / 7, Rat(13) / 3, Rat(-61) / 11};
  FactoredEval sym;
  NumericEval num{pt};
  for (auto& text : {"1;1;-", "1;2;1"}) {
    LegTriple legs = parse_legs(text);
    int order = renormalized_volume(legs) + 3;
    auto ws = pt_vertex_series(legs, order, sym);
    auto wn = pt_vertex_series(legs, order, num);
    for (auto& [k, c] : ws.series.coeffs()) CHECK(c.eval(pt) == wn.series.coeff(k));
  }
}

TEST_CASE("rotation equivariance of the numeric series") {
  std::array<Rat, 3> pt{Rat(7) / 2, Rat(-19) / 5, Rat(23) / 4};
  LegTriple legs = parse_legs("1;2;-");
  LegTriple rot = legs.rotated();
  // New axis 1 carries the old axis-3 leg, so the rotated geometry is
  // evaluated at the correspondingly rotated point.
  std::array<Rat, 3> ptRot{pt[2], pt[0], pt[1]};
  int order = renormalized_volume(legs) + 3;
  auto a = pt_vertex_series(legs, order, NumericEval{pt});
  auto b = pt_vertex_series(rot, order, NumericEval{ptRot});
  CHECK(a.series == b.series);
}

TEST_CASE("zero-dimensional weights need no intersection theory") {
  FactoredEval ctx;
  for (auto& rec : enumerate_components(parse_legs("1;2;1"), 2)) {
    if (rec.dimension != 0) continue;
    auto v = redistributed_vertex_character(rec);
    FracS direct(1);
    for (auto& [key, c] : v.terms.terms()) {
      REQUIRE(key.second.empty());
      FracS lin{PolyS::linear(key.first[0], key.first[1], key.first[2])};
      for (long k = 0; k < (c > 0 ? c : -c); ++k)
        direct = c > 0 ? direct / lin : direct * lin;
    }
    CHECK(euler_weight(rec, ctx) == direct);
  }
}

TEST_CASE("degenerate numeric points are rejected") {
  NumericEval bad{{Rat(0), Rat(1), Rat(2)}};
  CHECK_THROWS_AS(euler_weight(chain_record(1), bad), degenerate_point_error);
}

TEST_CASE("descendent insertions satisfy the one-leg generating identity") {
  // Coefficientwise in z^{2+i} q^k:
  //   W(tau_i) = (1 - e^{z s2})(1 - e^{z s3}) exp(-z s1 q d/dq) (1+q)^{(s2+s3)/s1},
  // where the exponential shift sends q^k to q^k e^{-z k s1}.
  FactoredEval ctx;
  const std::size_t L = 5;  // z-degrees 0..4
  FracS s1(PolyS::var(0)), s2(PolyS::var(1)), s3(PolyS::var(2));
  ZPoly prefactor = zmul(zone_minus(zexp(s2, L)), zone_minus(zexp(s3, L)));
  for (int k = 0; k <= 4; ++k) {
    ZPoly rhs = zmul(prefactor, zexp(FracS(Rat(-k)) * s1, L));
    auto rec = chain_record(k);
    for (int i = -2; i <= 2; ++i) {
      FracS lhs = descendent_weight(rec, {i}, ctx);
      CHECK(lhs == chain_binomial(k) * rhs[2 + i]);
    }
  }
}

TEST_CASE("no insertions reduces to the plain weight") {
  FactoredEval ctx;
  for (auto& rec : enumerate_components(parse_legs("1;1;-"), 3))
    CHECK(descendent_weight(rec, {}, ctx) == euler_weight(rec, ctx));
}

TEST_CASE("descendent series in both modes") {
  std::array<Rat, 3> pt{Rat(11) / 3, Rat(5) / 2, Rat(-17) / 6};
  auto s = descendent_vertex_series(parse_legs("1;-;-"), {0, 0}, 3,
                                    FactoredEval{});
  auto n = descendent_vertex_series(parse_legs("1;-;-"), {0, 0}, 3,
                                    NumericEval{pt});
  for (auto& [k, c] : s.series.coeffs()) CHECK(c.eval(pt) == n.series.coeff(k));
}
