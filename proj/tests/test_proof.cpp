#include <doctest.h>

#include "deontic/proof.hpp"
#include "deontic/systems.hpp"

using namespace deontic;

namespace {

const std::filesystem::path kFixtures = DEONTIC_FIXTURES_DIR;

SystemRegistry registry() {
  auto reg = SystemRegistry::with_builtins();
  reg.define(load_system_definition(kFixtures / "systems/explosion_demo.json"));
  return reg;
}

ProofVerdict check(const std::string& text) {
  return check_proof(parse_proof_script(text), registry(), {kFixtures});
}

}  // namespace

TEST_CASE("scenarios replay and reach their conclusions") {
  const auto reg = registry();
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"etiquette", "Ps e"},
      {"online-return", "O original"},
      {"five-disjuncts", "Ps(s | t)"},
      {"five-disjuncts-extended", "Ps t"},
  };
  for (const auto& [name, last] : expected) {
    const auto r = run_scenario(name, reg, kFixtures);
    INFO(name, ": ", r.verdict.reason);
    CHECK(r.verdict.valid);
    REQUIRE_FALSE(r.conclusions.empty());
    CHECK(render(r.conclusions.back()) == last);
    CHECK(r.transcript.size() > r.verdict.tiers.size());
  }
  for (const std::string name : {"explosion", "controlled-explosion"}) {
    const auto r = run_scenario(name, reg, kFixtures);
    INFO(name, ": ", r.verdict.reason);
    CHECK(r.verdict.valid);
    CHECK(r.verdict.tiers.size() == 4);
  }
  CHECK(scenario_names(kFixtures).size() == 6);
}

TEST_CASE("transcripts are stable") {
  const auto reg = registry();
  CHECK(run_scenario("etiquette", reg, kFixtures).transcript ==
        run_scenario("etiquette", reg, kFixtures).transcript);
}

TEST_CASE("tiers follow hypotheses") {
  const auto r = run_scenario("etiquette", registry(), kFixtures);
  REQUIRE(r.verdict.tiers.size() == 9);
  CHECK(r.verdict.tiers[0] == Tier::Local);
  CHECK(r.verdict.tiers[4] == Tier::Theorem);  // taut
  CHECK(r.verdict.tiers[5] == Tier::Theorem);  // re of a theorem
  CHECK(r.verdict.tiers[7] == Tier::Theorem);  // axiom
  CHECK(r.verdict.tiers[8] == Tier::Local);
}

TEST_CASE("a small valid derivation") {
  const auto v = check(R"(system: FCP_2
goal: Ps(p | q) & O ~p -> Ps q
1. Ps(p | q) & O ~p -> Ps q ; ax AFCP_O
)");
  CHECK(v.valid);
  CHECK(v.line == 0);
}

TEST_CASE("mutations are rejected at the right line") {
  SUBCASE("mp with the wrong antecedent") {
    const auto v = check(R"(system: FCP_2
hyp: p
hyp: q -> r
1. p ; hyp
2. q -> r ; hyp
3. r ; mp 1 2
)");
    CHECK_FALSE(v.valid);
    CHECK(v.line == 3);
  }
  SUBCASE("re may not cite a local line") {
    const auto v = check(R"(system: FCP_2
hyp: p <-> q
1. p <-> q ; hyp
2. O p <-> O q ; re 1 O
)");
    CHECK_FALSE(v.valid);
    CHECK(v.line == 2);
  }
  SUBCASE("rm needs monotony in the system") {
    const auto v = check(R"(system: FCP_2
1. p -> p | q ; taut
2. Ps p -> Ps(p | q) ; rm 1 Ps
)");
    CHECK_FALSE(v.valid);
    CHECK(v.line == 2);
  }
  SUBCASE("an axiom outside the system") {
    const auto v = check(R"(system: Min
1. Ps(p | q) & O ~p -> Ps q ; ax AFCP_O
)");
    CHECK_FALSE(v.valid);
    CHECK(v.line == 1);
  }
  SUBCASE("unknown system") {
    const auto v = check("system: NOPE\n1. p | ~p ; taut\n");
    CHECK_FALSE(v.valid);
    CHECK(v.line == 0);
  }
  SUBCASE("a non-tautology") {
    const auto v = check("system: E\n1. p -> q ; taut\n");
    CHECK_FALSE(v.valid);
    CHECK(v.line == 1);
  }
  SUBCASE("goal mismatch") {
    const auto v = check("system: E\ngoal: q | ~q\n1. p | ~p ; taut\n");
    CHECK_FALSE(v.valid);
  }
  SUBCASE("ifcp side conditions must be theorems") {
    const auto v = check(R"(system: FCP_1
hyp: Ps(p | q) & O r
hyp: r -> ~p
1. Ps(p | q) & O r ; hyp
2. r -> ~p ; hyp
3. Ps q ; ifcp_o 1 2
)");
    CHECK_FALSE(v.valid);
    CHECK(v.line == 3);
  }
  SUBCASE("citing a later line") {
    const auto v = check("system: E\nhyp: p\n1. p ; mp 2 2\n2. p ; hyp\n");
    CHECK_FALSE(v.valid);
    CHECK(v.line == 1);
  }
}

TEST_CASE("script syntax errors") {
  CHECK_THROWS_AS(parse_proof_script("system: E\n2. p ; taut\n"), ProofParseError);
  CHECK_THROWS_AS(parse_proof_script("system: E\n1. p ; frobnicate\n"), ProofParseError);
  CHECK_THROWS_AS(parse_proof_script("system: E\n1. p & ; taut\n"), ProofParseError);
  try {
    parse_proof_script("system: E\n1. p | ~p ; taut\n2. q ; zz\n");
    FAIL("accepted");
  } catch (const ProofParseError& e) {
    CHECK(e.source_line() == 3);
  }
}

TEST_CASE("derivable entries of every system verify") {
  const auto reg = registry();
  for (const char* s : {"Min", "FCP_1", "FCP_2", "FCP_3", "FCP_4", "FCP_5", "FCP_6"}) {
    const auto rep = verify_table1(s, reg, kFixtures);
    for (const auto& e : rep.entries) {
      INFO(s, " ", e.name, ": ", e.verdict.reason);
      CHECK(e.verdict.valid);
    }
    CHECK(rep.all_valid());
  }
  CHECK(verify_table1("FCP_6", reg, kFixtures).unresolved == std::vector<std::string>{"IFCP2_O"});
  CHECK(verify_table1("FCP_3", reg, kFixtures).entries.size() == 3);
}

TEST_CASE("verify_derivation checks the shape of the script") {
  const auto reg = registry();
  // a valid script used for the wrong principle
  const auto v = verify_derivation(kFixtures / "table1/FCP_3/IFCP_O.proof", "FCP_3", "IFCP_P", reg, kFixtures);
  CHECK_FALSE(v.valid);
  // or the wrong system
  const auto w = verify_derivation(kFixtures / "table1/FCP_3/IFCP_O.proof", "FCP_2", "IFCP_O", reg, kFixtures);
  CHECK_FALSE(w.valid);
  CHECK(verify_derivation(kFixtures / "equivalences/FCP_1-IFCP2_P.proof", "FCP_1", "IFCP2_P", reg, kFixtures).valid);
  CHECK(verify_derivation(kFixtures / "equivalences/FCP_2-AFCP2_P.proof", "FCP_2", "AFCP2_P", reg, kFixtures).valid);
  CHECK_FALSE(verify_derivation(kFixtures / "missing.proof", "FCP_2", "AFCP2_P", reg, kFixtures).valid);
}
