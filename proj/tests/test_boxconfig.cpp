#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptvertex/boxconfig.hpp"
#include "ptvertex/boxoracle.hpp"

using namespace ptvertex;

namespace {
BoxConfiguration make(const LegTriple& legs,
                      std::initializer_list<std::pair<Weight, BoxTag>> bs) {
  BoxConfiguration c;
  c.legs = legs;
  for (auto& [w, t] : bs) c.boxes[w] = t;
  return c;
}
}  // namespace

TEST_CASE("single-box validity for the (1),(2),(1) geometry") {
  LegTriple legs = parse_legs("1;2;1");
  // A lone line box at the origin is forced to the axis-1 label by the
  // unboxed II weight above it, so the component is restricted.
  auto c1 = make(legs, {{{0, 0, 0}, BoxTag::IIILine}});
  CHECK(validate_configuration(c1).valid);
  auto pcs = path_components(c1);
  REQUIRE(pcs.size() == 1);
  CHECK(pcs[0].restricted);
  CHECK(pcs[0].forcedLabel == 0);
  CHECK(make_record(c1).dimension == 0);

  auto c2 = make(legs, {{{0, 0, 1}, BoxTag::IIBox}});
  CHECK(validate_configuration(c2).valid);

  // A lone I- box forces its forward neighbour.
  auto c3 = make(legs, {{{-1, 0, 0}, BoxTag::IminusBox}});
  CHECK(!validate_configuration(c3).valid);

  // A lone full box forces the II weight above it.
  auto c4 = make(legs, {{{0, 0, 0}, BoxTag::IIIFull}});
  CHECK(!validate_configuration(c4).valid);
  auto c5 = make(legs, {{{0, 0, 0}, BoxTag::IIIFull}, {{0, 0, 1}, BoxTag::IIBox}});
  CHECK(validate_configuration(c5).valid);
}

TEST_CASE("length-2 components of the (1),(2),(1) geometry") {
  LegTriple legs = parse_legs("1;2;1");
  // line at origin + I- box below along x1: restricted to label 1.
  auto a = make(legs, {{{0, 0, 0}, BoxTag::IIILine},
                       {{-1, 0, 0}, BoxTag::IminusBox}});
  CHECK(validate_configuration(a).valid);
  auto pa = path_components(a);
  CHECK(pa[0].restricted);
  CHECK(pa[0].forcedLabel == 0);
  // line at origin + II box above: free label, one P^1.
  auto b = make(legs, {{{0, 0, 0}, BoxTag::IIILine},
                       {{0, 0, 1}, BoxTag::IIBox}});
  CHECK(validate_configuration(b).valid);
  auto pb = path_components(b);
  CHECK(!pb[0].restricted);
  CHECK(make_record(b).dimension == 1);
  CHECK(make_record(b).eulerChar == 2);
  // I- box along x3 with the line at the origin and no II box: the two
  // forcing conditions conflict (labels 3 and 1).
  auto c = make(legs, {{{0, 0, 0}, BoxTag::IIILine},
                       {{0, 0, -1}, BoxTag::IminusBox}});
  CHECK(!validate_configuration(c).valid);
  // Boxing the II weight resolves the conflict in favour of label 3.
  auto d = make(legs, {{{0, 0, 0}, BoxTag::IIILine},
                       {{0, 0, -1}, BoxTag::IminusBox},
                       {{0, 0, 1}, BoxTag::IIBox}});
  CHECK(validate_configuration(d).valid);
  CHECK(path_components(d)[0].forcedLabel == 2);
}

TEST_CASE("component counts match the hand classification") {
  auto recs = enumerate_components(parse_legs("1;2;1"), 3);
  std::map<int, int> count, chi;
  for (auto& r : recs) {
    ++count[r.length];
    chi[r.length] += static_cast<int>(r.eulerChar);
  }
  CHECK(count[0] == 1);
  CHECK(count[1] == 2);
  CHECK(count[2] == 3);
  CHECK(count[3] == 6);
  CHECK(chi[0] == 1);
  CHECK(chi[1] == 2);
  CHECK(chi[2] == 4);
  CHECK(chi[3] == 7);
}

TEST_CASE("one-leg chains") {
  auto recs = enumerate_components(parse_legs("1;-;-"), 5);
  REQUIRE(recs.size() == 6);
  for (int k = 0; k <= 5; ++k) {
    CHECK(recs[k].length == k);
    CHECK(recs[k].dimension == 0);
    for (auto& [w, t] : recs[k].config.boxes) CHECK(t == BoxTag::IminusBox);
  }
}

TEST_CASE("degenerate and empty inputs") {
  auto recs = enumerate_components(parse_legs("-;-;-"), 4);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].length == 0);
  CHECK(path_components(recs[0].config).empty());
}

TEST_CASE("re-validation is idempotent") {
  for (auto& r : enumerate_components(parse_legs("1;2;1"), 4))
    CHECK(validate_configuration(r.config).valid);
}

TEST_CASE("cyclic symmetry of the census") {
  LegTriple legs = parse_legs("1;2;-");
  auto a = component_histogram(enumerate_components(legs, 4));
  auto b = component_histogram(enumerate_components(legs.rotated(), 4));
  auto c =
      component_histogram(enumerate_components(legs.rotated().rotated(), 4));
  CHECK(a == b);
  CHECK(a == c);
  CHECK(legs.rotated().rotated().rotated() == legs);
}

TEST_CASE("brute-force submodule oracle agrees") {
  for (auto& text : {"-;-;-", "1;-;-", "1;1;-", "1;2;1", "2;1;-", "1;1;1"}) {
    LegTriple legs = parse_legs(text);
    int maxLength = 3;
    auto recs = enumerate_components(legs, maxLength);
    auto oracle = brute_force_submodules(legs, maxLength);
    CHECK(oracle.anomalies == 0);
    CHECK(oracle.families == component_histogram(recs));
  }
}
