#include <doctest.h>

#include "deontic/frames.hpp"
#include "deontic/systems.hpp"
#include "oracles.hpp"

using namespace deontic;
using P = FrameProperty;

TEST_CASE("inventory") {
  CHECK(axiom_inventory().size() == 9);
  REQUIRE(find_axiom("AFCP_O"));
  CHECK(render(find_axiom("AFCP_O")->body) == "Ps(p | q) & O ~p -> Ps q");
  CHECK(render(find_axiom("D_w")->body) == "O p & O ~p -> F");
  CHECK(find_axiom("nope") == nullptr);
  const RuleSchema* r = find_rule("IFCP_P");
  REQUIRE(r);
  CHECK(r->side_conditions.size() == 2);
  CHECK(r->metavariables == std::set<std::string>{"p", "q", "r", "s"});
  CHECK(is_known_rule("MP"));
  CHECK(is_known_rule("Taut"));
  CHECK(is_known_rule("RM_Ps"));
  CHECK_FALSE(is_known_rule("IFCP2_O"));
}

TEST_CASE("built-in systems") {
  const auto reg = SystemRegistry::with_builtins();
  const auto& e = reg.get("E");
  CHECK(e.axioms.empty());
  CHECK(e.rules == std::vector<std::string>{"MP", "Taut", "RE_O", "RE_Ps"});
  CHECK(reg.frame_class("E").empty());

  const auto& fcp2 = reg.get("FCP_2");
  CHECK(fcp2.axioms == std::vector<std::string>{"D_s", "D_w", "AFCP_O", "AFCP_P"});
  CHECK(fcp2.rules == std::vector<std::string>{"MP", "Taut", "RE_O", "RE_Ps"});

  CHECK(reg.frame_class("Min") == std::set<P>{P::PsCoherent, P::PwCoherent});
  CHECK(reg.frame_class("FCP_3").contains(P::PSupplemented));
  CHECK(reg.frame_class("FCP_1") == std::set<P>{P::PsCoherent, P::PwCoherent, P::IFCPO, P::IFCPP});

  const auto& fcp6 = reg.get("FCP_6");
  CHECK(fcp6.has_axiom("M_O"));
  CHECK(fcp6.admits_rm(Modality::Obligation));
  CHECK(fcp6.admits_rm(Modality::WeakPermission));
  CHECK(fcp6.admits_rm(Modality::StrongPermission));
  CHECK_FALSE(fcp2.admits_rm(Modality::StrongPermission));
  CHECK(fcp6.unresolved == std::vector<std::string>{"IFCP2_O"});

  CHECK(&reg.get("fcp-2") == &fcp2);
  CHECK(&reg.get("Fcp2") == &fcp2);
  CHECK_THROWS_AS(reg.get("FCP_9"), SystemError);
  CHECK(reg.names().size() == 8);
}

TEST_CASE("define_system") {
  auto reg = SystemRegistry::with_builtins();
  const auto name = reg.define({"EXPLOSION_DEMO", {"FCP"}, {"RM_Ps"}, std::nullopt, {}, {}});
  CHECK(name == "EXPLOSION_DEMO");
  const auto& d = reg.get("explosion_demo");
  CHECK(d.has_rule("RE_Ps"));
  CHECK(d.has_rule("RM_Ps"));
  CHECK(d.admits_rm(Modality::StrongPermission));
  CHECK_THROWS_AS(reg.frame_class("EXPLOSION_DEMO"), SystemError);
  CHECK_THROWS_AS(reg.define({"E", {}, {}, std::nullopt, {}, {}}), SystemError);
  CHECK_THROWS_AS(reg.define({"X", {"X9"}, {}, std::nullopt, {}, {}}), SystemError);
  CHECK_THROWS_AS(reg.define({"Y", {}, {"RZ"}, std::nullopt, {}, {}}), SystemError);
}

TEST_CASE("system definition files") {
  const auto def = load_system_definition(std::filesystem::path(DEONTIC_FIXTURES_DIR) / "systems/explosion_demo.json");
  CHECK(def.name == "EXPLOSION_DEMO");
  CHECK(def.axioms == std::vector<std::string>{"FCP"});
  const auto with_class =
      parse_system_definition(R"({"name": "S", "axioms": ["D_s"], "rules": [], "frame_class": ["PsCoherent"]})");
  REQUIRE(with_class.frame_class);
  CHECK(*with_class.frame_class == std::set<P>{P::PsCoherent});
  CHECK_THROWS(parse_system_definition(R"({"axioms": []})"));
  CHECK_THROWS(parse_system_definition(R"({"name": "S", "frame_class": ["Weird"]})"));
}

TEST_CASE("correspondence table") {
  const auto& cs = correspondences();
  CHECK(cs.size() == 8);
  for (const auto& c : cs) {
    CHECK((c.is_rule ? find_rule(c.principle) != nullptr : find_axiom(c.principle) != nullptr));
  }
}

TEST_CASE("property: every principle of a system is valid on random frames of its class") {
  const auto reg = SystemRegistry::with_builtins();
  oracle::Rng rng(555);
  for (const auto& name : reg.names()) {
    const auto& sys = reg.get(name);
    const auto cls = reg.frame_class(name);
    for (int i = 0; i < 40; ++i) {
      const auto om = oracle::random_frame_with_retry(rng, 3, cls);
      const auto m = oracle::to_engine(om);
      for (const auto& a : sys.axioms) {
        INFO(name, " ", a, " i=", i);
        CHECK(schema_valid_on_frame(m.frame(), *find_axiom(a)).valid());
      }
      for (const auto& r : sys.rules) {
        if (const RuleSchema* rs = find_rule(r); rs && r.rfind("IFCP", 0) == 0) {
          INFO(name, " ", r, " i=", i);
          CHECK(rule_valid_on_frame(m.frame(), *rs).valid());
        }
      }
    }
  }
}
