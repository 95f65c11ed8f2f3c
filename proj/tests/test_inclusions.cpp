#include <doctest.h>

#include <map>

#include "deontic/inclusions.hpp"
#include "oracles.hpp"

using namespace deontic;
using P = FrameProperty;

namespace {
const std::filesystem::path kFixtures = DEONTIC_FIXTURES_DIR;
}

TEST_CASE("property: every listed implication holds on random frames") {
  oracle::Rng rng(1717);
  for (const auto& imp : property_implications()) {
    int hits = 0;
    for (int i = 0; i < 300; ++i) {
      const auto om = i % 2 ? oracle::random_frame_with_retry(rng, 3, imp.premises)
                            : oracle::random_model(rng, i % 4 ? 3 : 4, {}, 0.3);
      bool premises = true;
      for (auto p : imp.premises) premises = premises && oracle::property(om, p);
      if (!premises) continue;
      ++hits;
      INFO(to_string(imp.conclusion), " i=", i);
      CHECK(oracle::property(om, imp.conclusion));
    }
    CHECK(hits >= 150);
  }
}

TEST_CASE("property_closure") {
  CHECK(property_closure({P::AFCPO, P::AFCPP}).contains(P::AFCP2P));
  CHECK(property_closure({P::IFCPP}).contains(P::IFCP2P));
  CHECK(property_closure({P::IFCPP}).contains(P::AFCP2P));
  CHECK(property_closure({P::OSupplemented, P::AFCPO}).contains(P::IFCPO));
  CHECK_FALSE(property_closure({P::AFCPO}).contains(P::IFCPO));
  CHECK(property_closure({}).empty());
}

TEST_CASE("inclusion report") {
  const auto reg = SystemRegistry::with_builtins();
  const auto facts = inclusion_report(reg, kFixtures);
  REQUIRE(facts.size() == 7);

  std::map<std::string, const InclusionFact*> by_pair;
  for (const auto& f : facts) by_pair[f.smaller + "<" + f.larger] = &f;
  REQUIRE(by_pair.size() == 7);

  for (const auto& f : facts) {
    INFO(f.smaller, " < ", f.larger);
    CHECK(f.included());
    CHECK(f.antitone);
    for (const auto& e : f.evidence) CHECK(e.verdict.valid);
    CHECK(f.strict() != f.collapses());
  }

  for (const char* strict : {"FCP_2<FCP_1", "FCP_1<FCP_3", "FCP_4<FCP_5", "FCP_5<FCP_6"}) {
    INFO(strict);
    const auto& f = *by_pair.at(strict);
    CHECK(f.strict());
    REQUIRE(f.separator);
    CHECK(f.separator->verified());
  }
  // these pairs derive each other's principles, so they name one system twice
  for (const char* equal : {"FCP_3<FCP_6", "FCP_2<FCP_4", "FCP_1<FCP_5"}) {
    INFO(equal);
    const auto& f = *by_pair.at(equal);
    CHECK(f.collapses());
    CHECK_FALSE(f.converse.empty());
    for (const auto& c : f.converse) CHECK(c.verdict.valid);
    CHECK_FALSE(f.separator.has_value());
  }
}

TEST_CASE("printed countermodels as separators") {
  const auto reg = SystemRegistry::with_builtins();
  const auto m1 = check_separator(kFixtures / "corollary3_model1.json", reg, "FCP_2", "FCP_1");
  CHECK(m1.falsified == std::optional<std::string>("IFCP_O"));
  CHECK(m1.missing == std::set<P>{P::AFCPP});  // as printed, AFCPP fails
  CHECK_FALSE(m1.verified());

  const auto m2 = check_separator(kFixtures / "corollary3_model2.json", reg, "FCP_4", "FCP_5");
  CHECK(m2.missing.contains(P::AFCP2P));

  const auto missing = check_separator(kFixtures / "nope.json", reg, "FCP_2", "FCP_1");
  CHECK_FALSE(missing.error.empty());

  const auto sep = check_separator(kFixtures / "separators/ifcp_o.json", reg, "FCP_2", "FCP_1");
  CHECK(sep.verified());
  CHECK(check_separator(kFixtures / "separators/m_o.json", reg, "FCP_1", "FCP_3").verified());
}
