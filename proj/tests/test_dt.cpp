#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "ptvertex/dt.hpp"

using namespace ptvertex;

namespace {

std::map<int, long> size_census(const std::string& legs, int maxExtra) {
  std::map<int, long> counts;
  for (auto& pi : enumerate_3d_partitions(parse_legs(legs), maxExtra))
    counts[pi.size()] += 1;
  return counts;
}

}  // namespace

TEST_CASE("plain 3d partitions are counted by the MacMahon numbers") {
  auto c = size_census("-;-;-", 4);
  CHECK(c == std::map<int, long>{{0, 1}, {1, 1}, {2, 3}, {3, 6}, {4, 13}});
}

TEST_CASE("three-leg 3d partition counts") {
  CHECK(renormalized_volume(parse_legs("1;2;1")) == -3);
  auto c = size_census("1;2;1", 3);
  CHECK(c == std::map<int, long>{{-3, 1}, {-2, 3}, {-1, 9}, {0, 23}});
}

TEST_CASE("census is stable under enlarging the search budget") {
  // Enumerating with a bigger box budget uses a bigger window; the counts
  // at the smaller sizes must not change.
  for (auto& legs : {"-;-;-", "1;-;-", "2,1;-;-", "1;1;-"}) {
    int offset = renormalized_volume(parse_legs(legs));
    auto small = size_census(legs, 3);
    auto big = size_census(legs, 4);
    for (int n = 0; n <= 3; ++n) CHECK(small[offset + n] == big[offset + n]);
  }
}

TEST_CASE("box-counting ideal-sheaf series carries alternating signs") {
  auto s = dt_cy_vertex_series(parse_legs("-;-;-"), 4);
  CHECK(s.coeff(0) == 1);
  CHECK(s.coeff(1) == -1);
  CHECK(s.coeff(2) == 3);
  CHECK(s.coeff(3) == -6);
  CHECK(s.coeff(4) == 13);
  CHECK(s == macmahon_minus_q<long>(4));

  auto t = dt_cy_vertex_series(parse_legs("1;2;1"), 0);
  CHECK(t.coeff(-3) == -1);
  CHECK(t.coeff(-2) == 3);
  CHECK(t.coeff(-1) == -9);
  CHECK(t.coeff(0) == 23);
}

TEST_CASE("box-counting correspondence with the pairs series") {
  CHECK(dt_pt_cy_check(parse_legs("-;-;-"), 4).match);
  CHECK(dt_pt_cy_check(parse_legs("1;-;-"), 3).match);
  CHECK(dt_pt_cy_check(parse_legs("1;1;-"), 2).match);
  CHECK(dt_pt_cy_check(parse_legs("2,1;1;-"), 1).match);
  CHECK(dt_pt_cy_check(parse_legs("1;2;1"), 0).match);
}

TEST_CASE("single-box weight is the classic triple product") {
  FactoredEval ctx;
  Partition3D pi{parse_legs("-;-;-"), {Weight{0, 0, 0}}};
  FracS expect = FracS(PolyS::linear(1, 1, 0)) *
                 FracS(PolyS::linear(1, 0, 1)) * FracS(PolyS::linear(0, 1, 1)) /
                 FracS(PolyS::linear(1, 0, 0)) / FracS(PolyS::linear(0, 1, 0)) /
                 FracS(PolyS::linear(0, 0, 1));
  CHECK(dt_weight(pi, ctx) == expect);
}

TEST_CASE("degree-zero series is a MacMahon power") {
  FactoredEval ctx;
  auto w = dt_vertex_series(parse_legs("-;-;-"), 2, ctx);
  FracS expo = FracS(0) - FracS(PolyS::linear(1, 1, 0)) *
                              FracS(PolyS::linear(1, 0, 1)) *
                              FracS(PolyS::linear(0, 1, 1)) /
                              FracS(PolyS::linear(1, 0, 0)) /
                              FracS(PolyS::linear(0, 1, 0)) /
                              FracS(PolyS::linear(0, 0, 1));
  CHECK(w.series == pow_series(macmahon_minus_q<FracS>(2), expo));
}

TEST_CASE("equivariant correspondence with the pairs series") {
  FactoredEval sym;
  CHECK(dt_pt_equivariant_check(parse_legs("1;-;-"), 2, sym).match);
  NumericEval num{{Rat(97) / 7, Rat(13) / 3, Rat(-61) / 11}};
  CHECK(dt_pt_equivariant_check(parse_legs("1;-;-"), 3, num).match);
  CHECK(dt_pt_equivariant_check(parse_legs("1;1;-"), 1, num).match);
  CHECK(dt_pt_equivariant_check(parse_legs("2;1;-"), 0, num).match);
}

TEST_CASE("degenerate numeric points are rejected") {
  Partition3D pi{parse_legs("-;-;-"), {Weight{0, 0, 0}}};
  NumericEval bad{{Rat(1), Rat(1), Rat(-1)}};  // kills s1 + s3
  CHECK_THROWS_AS(dt_weight(pi, bad), degenerate_point_error);
}
