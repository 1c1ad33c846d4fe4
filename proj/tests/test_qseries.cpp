#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptvertex/qseries.hpp"

using namespace ptvertex;

TEST_CASE("series arithmetic") {
  QLaurentSeries<Rat> a(6), b(6);
  a.set(-1, Rat(1));
  a.set(2, Rat(3));
  b.set(0, Rat(2));
  b.set(2, Rat(-3));
  auto s = a + b;
  CHECK(s.coeff(-1) == Rat(1));
  CHECK(s.coeff(0) == Rat(2));
  CHECK(s.coeff(2) == Rat(0));
  auto p = a * b;
  CHECK(p.coeff(-1) == Rat(2));
  CHECK(p.coeff(1) == Rat(-3));
  CHECK(p.coeff(2) == Rat(6));
  CHECK(p.coeff(4) == Rat(-9));
  CHECK(a.shifted(3).coeff(2) == Rat(1));
}

TEST_CASE("plane partition generating series") {
  // M(-q) = prod (1-(-q)^n)^{-n}; |coefficients| count plane partitions.
  auto m = macmahon_minus_q<Rat>(6);
  long expect[] = {1, -1, 3, -6, 13, -24, 48};
  for (int k = 0; k <= 6; ++k) CHECK(m.coeff(k) == Rat(expect[k]));
}

TEST_CASE("binomial power series with rational exponent") {
  QLaurentSeries<Rat> s(5);
  s.set(0, Rat(1));
  s.set(1, Rat(1));  // 1 + q
  auto p = pow_series(s, Rat(-1));
  for (int k = 0; k <= 5; ++k) CHECK(p.coeff(k) == Rat(k % 2 ? -1 : 1));
  auto h = pow_series(s, Rat(1, 2));
  CHECK(h * h == s);
  auto integral = pow_series(s, Rat(3));
  CHECK(integral.coeff(2) == Rat(3));
  CHECK(integral.coeff(3) == Rat(1));
  CHECK(integral.coeff(4) == Rat(0));
}

TEST_CASE("power series over rational functions") {
  PolyS s1 = PolyS::var(0);
  PolyS s2 = PolyS::var(1);
  RatFuncS expo = RatFuncS(s2) / RatFuncS(s1);
  QLaurentSeries<RatFuncS> s(4);
  s.set(0, RatFuncS(Rat(1)));
  s.set(1, RatFuncS(Rat(1)));
  auto p = pow_series(s, expo);
  // (1+q)^(s2/s1): coefficient of q^2 is (s2/s1)(s2/s1 - 1)/2.
  RatFuncS c2 = expo * (expo - RatFuncS(Rat(1))) / RatFuncS(Rat(2));
  CHECK(p.coeff(2) == c2);
  // Multiplicativity: (1+q)^a * (1+q)^{-a} = 1.
  auto q = pow_series(s, RatFuncS(Rat(0)) - expo);
  auto prod = p * q;
  CHECK(prod.coeff(0) == RatFuncS(Rat(1)));
  for (int k = 1; k <= 4; ++k) CHECK(prod.coeff(k) == RatFuncS(Rat(0)));
}
