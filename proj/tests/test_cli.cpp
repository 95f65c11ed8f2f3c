#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = deontic::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("parse") {
  const auto ok = run({"parse", "Pw p & q"});
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "Pw p & q"));
  const auto js = run({"--json", "parse", "Pw p & q"});
  REQUIRE(js.code == 0);
  const auto doc = nlohmann::json::parse(js.out);
  CHECK(doc["expanded"] == "~O ~p & q");
  CHECK(doc["modal_depth"] == 1);
  const auto bad = run({"parse", "p &"});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "position 3"));
}

TEST_CASE("eval and classify") {
  const auto e = run({"eval", "corollary3_model1", "~a | c"});
  CHECK(e.code == 0);
  CHECK(contains(e.out, "{w1,w2,w3}"));
  const auto c = run({"classify", "corollary3_model1"});
  CHECK(c.code == 0);
  CHECK(contains(c.out, "IFCPO"));
  CHECK(run({"eval", "no-such-model", "p"}).code == 2);
}

TEST_CASE("check-frame") {
  CHECK(run({"check-frame", "corollary3_model1", "--property", "AFCPO"}).code == 0);
  CHECK(run({"check-frame", "corollary3_model1", "--property", "IFCPO"}).code == 1);
  CHECK(run({"check-frame", "corollary3_model1_extended", "--schema", "M_O"}).code == 1);
}

TEST_CASE("prove and verify-table1") {
  const auto p = run({"prove", "table1/FCP_3/IFCP_P.proof"});
  CHECK(p.code == 0);
  CHECK(contains(p.out, "valid"));
  const auto t = run({"verify-table1", "--all"});
  CHECK(t.code == 0);
  CHECK(contains(t.out, "IFCP2_O"));
}

TEST_CASE("countermodel exit codes") {
  CHECK(run({"countermodel", "--target", "M_O", "--atoms", "a,b"}).code == 0);
  CHECK(run({"countermodel", "--target", "p -> p", "--atoms", "p", "--max-worlds", "2"}).code == 1);
  CHECK(run({"countermodel", "--target", "IFCP_O", "--class", "FCP_2", "--atoms", "a,b,c"}).code == 0);
  CHECK(run({"countermodel", "--target", "p", "--atoms", "p", "--max-worlds", "9"}).code == 2);
  CHECK(run({"countermodel", "--target", "p", "--atoms", "p", "--require", "Bogus"}).code == 2);
}

TEST_CASE("remainder") {
  const auto r = run({"remainder", "p | q | r | s | t", "--theory", "five-disjuncts"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "Ps(s | t)"));
  const auto ext = run({"remainder", "p | q | r | s | t", "--theory", "five-disjuncts-extended"});
  CHECK(contains(ext.out, "Ps t"));
}

TEST_CASE("demo") {
  const auto list = run({"demo"});
  CHECK(list.code == 0);
  CHECK(contains(list.out, "etiquette"));
  const auto a = run({"demo", "etiquette"});
  const auto b = run({"demo", "etiquette"});
  CHECK(a.code == 0);
  CHECK(contains(a.out, "derived: Ps e"));
  CHECK(a.out == b.out);
  const auto five = run({"demo", "five-disjuncts"});
  CHECK(contains(five.out, "derived: Ps(s | t)"));
  CHECK(contains(five.out, "derived: Ps t"));
  CHECK(contains(run({"demo", "online-return"}).out, "derived: O original"));
  CHECK(run({"demo", "explosion"}).code == 0);
}

TEST_CASE("inclusions") {
  const auto r = run({"inclusions"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "FCP_2"));
}

TEST_CASE("usage errors") {
  CHECK(run({}).code != 0);
  CHECK(run({"frobnicate"}).code != 0);
}
