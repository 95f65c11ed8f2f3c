#include <doctest.h>

#include "deontic/model.hpp"
#include "deontic/model_io.hpp"
#include "oracles.hpp"

using namespace deontic;

namespace {

NeighbourhoodModel fixture(const char* name) {
  return load_model(std::filesystem::path(DEONTIC_FIXTURES_DIR) / name);
}

WorldSet worlds(const NeighbourhoodModel& m, std::initializer_list<const char*> names) {
  WorldSet s;
  for (auto n : names) s.insert(m.world_index(n));
  return s;
}

bool has_violation(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("first printed countermodel: truth sets") {
  const auto m = fixture("corollary3_model1");
  CHECK(m.world_count() == 5);
  CHECK(truth_set(m, parse("~a | c")) == worlds(m, {"w1", "w2", "w3"}));
  CHECK(eval(m, "w1", parse("Ps(~a | c)")));
  CHECK_FALSE(eval(m, "w1", parse("Ps c")));
  // The text claims [[a & c]] = {w4}; as printed it is {w1}. {w4} is [[a & b]].
  CHECK(truth_set(m, parse("a & c")) == worlds(m, {"w1"}));
  CHECK(truth_set(m, parse("a & b")) == worlds(m, {"w4"}));
  CHECK(eval(m, "w1", parse("O(a & b)")));
  CHECK_FALSE(eval(m, "w1", parse("O(a & c)")));
  // worlds without neighbourhoods make every modal atom false
  CHECK_FALSE(eval(m, "w2", parse("Ps(~a | c)")));
  CHECK(eval(m, "w2", parse("Pw p")));
}

TEST_CASE("second printed countermodel: facts as printed") {
  const auto m = fixture("corollary3_model2");
  CHECK(eval(m, "w1", parse("Ps(a | c)")));
  CHECK(eval(m, "w1", parse("Pw(a & b)")));
  // Claimed false in the text; [[a]] = {w1,w2} is in N_P(w1) as printed.
  CHECK(truth_set(m, parse("a")) == worlds(m, {"w1", "w2"}));
  CHECK(eval(m, "w1", parse("Ps a")));
}

TEST_CASE("validate_model reports every problem") {
  ModelDescription d;
  d.worlds = {"w1", "w2", "w1"};
  d.valuation["a"] = {"w9"};
  d.valuation["Bad"] = {};
  d.obligation["w3"] = {{"w1"}};
  d.permission["w1"] = {{"w1", "zz"}};
  const auto v = validate_model(d);
  CHECK(has_violation(v, "'w1' declared twice"));
  CHECK(has_violation(v, "'w9' outside W"));
  CHECK(has_violation(v, "'Bad' is not a valid atom name"));
  CHECK(has_violation(v, "world 'w3' outside W"));
  CHECK(has_violation(v, "set member 'zz' outside W"));
  CHECK_THROWS_AS(NeighbourhoodModel::from_description(d), ModelError);

  ModelDescription empty;
  CHECK(has_violation(validate_model(empty), "W is empty"));
}

TEST_CASE("model documents") {
  CHECK_THROWS(parse_model("{"));
  CHECK_THROWS(parse_model("[]"));
  CHECK_THROWS(parse_model(R"({"valuation": {}})"));
  CHECK_THROWS(parse_model(R"({"worlds": [1]})"));
  CHECK_THROWS_AS(parse_model(R"({"worlds": ["u"], "N_O": {"u": [["v"]]}})"), ModelError);
  const auto m = parse_model(R"({"worlds": ["u", "v"], "valuation": {"p": ["v"]}, "N_P": {"u": [["v"]]}})");
  CHECK(eval(m, "u", parse("Ps p")));
  CHECK_FALSE(eval(m, "v", parse("Ps p")));
  CHECK(m.valuation("missing").empty());
}

TEST_CASE("json round trip keeps the model") {
  const auto m = fixture("corollary3_model1_extended");
  const auto back = parse_model(model_to_json(m));
  CHECK(back.frame() == m.frame());
  CHECK(back.valuation() == m.valuation());
  CHECK(back.world_names() == m.world_names());
}

TEST_CASE("property: compiled evaluation agrees with the truth clauses") {
  oracle::Rng rng(1234);
  const std::vector<std::string> atoms = {"p", "q", "r"};
  for (int i = 0; i < 400; ++i) {
    const auto om = oracle::random_model(rng, 4, atoms, 0.3);
    const auto m = oracle::to_engine(om);
    for (int k = 0; k < 10; ++k) {
      const Formula f = oracle::random_formula(rng, 4, atoms);
      INFO(render(f));
      CHECK(truth_set(m, f).bits() == oracle::extension(om, f));
    }
  }
}

TEST_CASE("model_valid and eval on a tiny model") {
  Frame f = Frame::empty(2);
  f.obligation[0].insert(WorldSet(0b01));
  f.obligation[1].insert(WorldSet(0b01));
  const NeighbourhoodModel m(default_world_names(2), f, {{"p", WorldSet(0b01)}});
  CHECK(model_valid(m, parse("O p")));
  CHECK_FALSE(model_valid(m, parse("p")));
  CHECK(eval(m, 1, parse("~p & O p")));
  CHECK_THROWS(eval(m, 5, parse("p")));
  CHECK_THROWS(eval(m, "w7", parse("p")));
}
