#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptvertex/polys.hpp"

using namespace ptvertex;

TEST_CASE("polynomial arithmetic basics") {
  PolyS s1 = PolyS::var(0);
  PolyS s2 = PolyS::var(1);
  PolyS s3 = PolyS::var(2);
  PolyS p = (s1 + s2) * (s1 - s2);
  CHECK(p == s1 * s1 - s2 * s2);
  CHECK((p - p) == PolyS());
  CHECK(PolyS(Rat(3)) * PolyS(Rat(0)) == PolyS());
  PolyS lin = PolyS::linear(1, 2, -1);
  CHECK(lin == s1 + s2 * Rat(2) - s3);
}

TEST_CASE("exact division and failure") {
  PolyS s1 = PolyS::var(0);
  PolyS s2 = PolyS::var(1);
  PolyS a = (s1 + s2) * (s1 + s2 * Rat(2)) * (s1 - s2);
  CHECK(divexact(a, s1 + s2) == (s1 + s2 * Rat(2)) * (s1 - s2));
  CHECK_THROWS(divexact(a, s1 + s2 * Rat(3)));
}

TEST_CASE("multivariate gcd") {
  PolyS s1 = PolyS::var(0);
  PolyS s2 = PolyS::var(1);
  PolyS s3 = PolyS::var(2);
  PolyS g = s1 + s2 + s3;
  PolyS a = g * g * (s1 - s2);
  PolyS b = g * (s2 + s3);
  PolyS d = detail::gcd(a, b);
  // gcd is determined up to scalar; our normalization pins it exactly.
  CHECK(divexact(a, d) * d == a);
  CHECK(divexact(b, d) * d == b);
  CHECK(d == g);  // normalize_least pins the scalar
}

TEST_CASE("rational functions are canonical") {
  PolyS s1 = PolyS::var(0);
  PolyS s2 = PolyS::var(1);
  RatFuncS a(s1 * s1 - s2 * s2, s1 + s2);   // reduces to s1 - s2
  RatFuncS b(s1 - s2);
  CHECK(a == b);
  RatFuncS c = RatFuncS(s1) / RatFuncS(s2);
  RatFuncS d = RatFuncS(s1 * (s1 + s2)) / RatFuncS(s2 * (s1 + s2));
  CHECK(c == d);
  CHECK(c * RatFuncS(s2) == RatFuncS(s1));
  CHECK(c.inv() == RatFuncS(s2) / RatFuncS(s1));
  // Denominator normalization: scaling both parts changes nothing.
  RatFuncS e = RatFuncS(s1 * Rat(-2)) / RatFuncS(s2 * Rat(-2));
  CHECK(e == c);
}

TEST_CASE("rational function arithmetic identities") {
  PolyS s1 = PolyS::var(0);
  PolyS s2 = PolyS::var(1);
  RatFuncS x = RatFuncS(s1) / RatFuncS(s1 + s2);
  RatFuncS y = RatFuncS(s2) / RatFuncS(s1 + s2);
  CHECK(x + y == RatFuncS(Rat(1)));
  CHECK(x - x == RatFuncS(Rat(0)));
  CHECK(x * x.inv() == RatFuncS(Rat(1)));
}

TEST_CASE("evaluation and substitution") {
  PolyS s1 = PolyS::var(0);
  PolyS s2 = PolyS::var(1);
  RatFuncS f = RatFuncS(s1 + s2) / RatFuncS(s1 - s2);
  std::array<Rat, 3> pt{Rat(3), Rat(1), Rat(0)};
  CHECK(f.eval(pt) == Rat(2));
  // Pole detection at s1 = s2.
  std::array<Rat, 3> bad{Rat(1), Rat(1), Rat(5)};
  CHECK_THROWS(f.eval(bad));
  // s3 := -s1 - s2 on a function regular along that locus.
  PolyS s3 = PolyS::var(2);
  RatFuncS g = RatFuncS(s1 + s2 + s3) / RatFuncS(s1);
  RatFuncS h = g.substitute(2, -s1 - s2);
  CHECK(h == RatFuncS(Rat(0)));
}
