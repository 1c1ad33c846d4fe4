#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ptvertex/cli.hpp"

using namespace ptvertex;
using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out, err;
  json j;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli_run(args, out, err);
  RunResult r{code, out.str(), err.str(), {}};
  if (!r.out.empty() && r.out.front() == '{') r.j = json::parse(r.out);
  return r;
}

std::string preset(const std::string& name) {
  return std::string(PRESET_DIR) + "/" + name + ".json";
}

std::map<int, std::string> term_map(const json& terms) {
  std::map<int, std::string> m;
  for (auto& t : terms)
    m[t.at("qPower").get<int>()] = t.at("coefficient").get<std::string>();
  return m;
}

}  // namespace

TEST_CASE("box-counting vertex series with the published coefficients") {
  auto r = run({"vertex", "cy", "--legs", "1;2;1", "--order", "0"});
  REQUIRE(r.code == 0);
  auto lit = term_map(r.j.at("terms"));
  CHECK(lit.at(-3) == "-1");
  CHECK(lit.at(-2) == "2");
  CHECK(lit.at(-1) == "-4");
  CHECK(lit.at(0) == "7");
  auto mq = term_map(r.j.at("minusQForm"));
  CHECK(mq.at(-3) == "1");
  CHECK(mq.at(-2) == "2");
  CHECK(mq.at(-1) == "4");
  CHECK(mq.at(0) == "7");
  CHECK(r.j.at("conjectural").get<bool>() == true);
}

TEST_CASE("ideal-sheaf box counting gives the generalized MacMahon values") {
  auto r = run({"vertex", "dt", "--cy", "--legs", "1;2;1", "--order", "0"});
  REQUIRE(r.code == 0);
  auto mq = term_map(r.j.at("minusQForm"));
  CHECK(mq.at(-3) == "1");
  CHECK(mq.at(-2) == "3");
  CHECK(mq.at(-1) == "9");
  CHECK(mq.at(0) == "23");
  auto r0 = run({"vertex", "dt", "--cy", "--order", "3"});
  auto m0 = term_map(r0.j.at("minusQForm"));
  CHECK(m0.at(0) == "1");
  CHECK(m0.at(1) == "1");
  CHECK(m0.at(2) == "3");
  CHECK(m0.at(3) == "6");
}

TEST_CASE("symbolic coefficients round-trip through their printed form") {
  auto r = run({"vertex", "equivariant", "--legs", "1;-;-", "--order", "2"});
  REQUIRE(r.code == 0);
  auto direct =
      pt_vertex_series(parse_legs("1;-;-"), 2, FactoredEval{}).series;
  auto lit = term_map(r.j.at("terms"));
  for (auto& [k, text] : lit) CHECK(ratio_round_trips(text, direct.coeff(k)));
  CHECK(lit.count(0) == 1);
  CHECK(lit.count(2) == 1);
}

TEST_CASE("numeric mode evaluates at the requested point") {
  auto r = run({"vertex", "equivariant", "--legs", "1;-;-", "--order", "1",
                "--mode", "numeric", "--eval", "97/7,13/3,-61/11"});
  REQUIRE(r.code == 0);
  NumericEval ctx{{Rat(97) / 7, Rat(13) / 3, Rat(-61) / 11}};
  auto direct = pt_vertex_series(parse_legs("1;-;-"), 1, ctx).series;
  auto lit = term_map(r.j.at("terms"));
  for (auto& [k, text] : lit) CHECK(parse_rat(text) == direct.coeff(k));
}

TEST_CASE("enumerate reports components with box kinds and sizes") {
  auto r = run({"enumerate", "--legs", "2;1;-", "--order", "2"});
  REQUIRE(r.code == 0);
  auto& comps = r.j.at("components");
  CHECK(comps.size() ==
        enumerate_components(parse_legs("2;1;-"), 2).size());
  for (auto& c : comps) {
    CHECK(c.contains("length"));
    CHECK(c.contains("dim"));
    CHECK(c.contains("euler"));
    for (auto& b : c.at("boxes")) {
      CHECK(b.at("w").size() == 3);
      CHECK(!b.at("kind").get<std::string>().empty());
    }
  }
}

TEST_CASE("conjecture checks report agreement") {
  auto r = run({"check", "correspondence", "--cy", "--legs", "1;2;1",
                "--order", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.j.at("match").get<bool>());
  auto r2 = run({"check", "cy-specialization", "--legs", "2;1;-", "--order",
                 "3"});
  REQUIRE(r2.code == 0);
  CHECK(r2.j.at("match").get<bool>());
  auto r3 = run({"check", "con-parity", "--legs", "3;-;-", "--order", "4"});
  REQUIRE(r3.code == 0);
  CHECK(r3.j.at("match").get<bool>());
  CHECK(r3.j.at("componentsChecked").get<long>() > 0);
}

TEST_CASE("toric assembly matches the library and flags degree zero") {
  auto r = run({"toric", "assemble", "--graph", preset("conifold"), "--beta",
                "0=1", "--order", "5"});
  REQUIRE(r.code == 0);
  auto lit = term_map(r.j.at("terms"));
  CHECK(lit.at(1) == "1");
  CHECK(lit.at(2) == "-2");
  CHECK(lit.at(3) == "3");
  CHECK(!r.j.contains("warning"));
  auto r0 = run({"toric", "assemble", "--graph", preset("conifold"),
                 "--order", "3"});
  REQUIRE(r0.code == 0);
  CHECK(r0.j.contains("warning"));
  auto rd = run({"toric", "assemble", "--graph", preset("p3"), "--theory",
                 "descendent", "--tau", "2", "--beta", "0=1", "--order", "3",
                 "--mode", "numeric", "--eval", "97/7,13/3,-61/11"});
  REQUIRE(rd.code == 0);
  NumericEval ctx{{Rat(97) / 7, Rat(13) / 3, Rat(-61) / 11}};
  auto direct =
      assemble_descendents(load_toric_graph(preset("p3")), {{0, 1}}, {2}, 3,
                           ctx);
  auto dm = term_map(rd.j.at("terms"));
  for (auto& [k, text] : dm) CHECK(parse_rat(text) == direct.coeff(k));
}

TEST_CASE("output is identical across thread counts") {
  std::vector<std::string> base{"vertex", "descendent", "--legs", "2;1;-",
                                "--tau",  "1",          "--order", "3"};
  auto one = base, four = base;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  auto r1 = run(one), r4 = run(four);
  REQUIRE(r1.code == 0);
  REQUIRE(r4.code == 0);
  CHECK(r1.j.at("terms") == r4.j.at("terms"));
  thread_override() = 0;
}

TEST_CASE("exit codes distinguish the failure modes") {
  CHECK(run({"vertex", "cy", "--legs", "oops"}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"vertex", "equivariant", "--legs", "1;-;-", "--order", "1",
             "--mode", "numeric"})
            .code == 2);
  // A point on a localization hyperplane degenerates.
  CHECK(run({"vertex", "equivariant", "--legs", "1;2;1", "--order", "0",
             "--mode", "numeric", "--eval", "1,1,-1"})
            .code == 3);
}

TEST_CASE("invalid toric graphs are rejected with violations") {
  auto bad = std::string(PRESET_DIR) + "/../build/bad_graph.json";
  {
    std::ofstream f(bad);
    f << R"({"cy": true, "vertices": [{"id":0,"slots":{"1":0}},)"
      << R"({"id":1,"slots":{"1":0}}],)"
      << R"("edges": [{"id":0,"ends":[[0,1],[1,1]],"m":0,"mprime":0}]})";
  }
  auto r = run({"toric", "assemble", "--graph", bad, "--order", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("violations") != std::string::npos);
}

TEST_CASE("csv output carries the same terms") {
  auto r = run({"vertex", "cy", "--legs", "1;-;-", "--order", "2", "--format",
                "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("qPower,coefficient\n", 0) == 0);
  CHECK(r.out.find("1,-1\n") != std::string::npos);
}
