#include "deontic/inclusions.hpp"

#include <algorithm>

#include "deontic/model_io.hpp"

namespace deontic {

namespace {

using P = FrameProperty;

const std::vector<std::string> kShared = {"MP", "Taut", "RE_O", "RE_Ps"};

std::vector<std::string> principles(const SystemDef& s) {
  std::vector<std::string> out = s.axioms;
  for (const auto& r : s.rules) {
    if (std::find(kShared.begin(), kShared.end(), r) == kShared.end()) out.push_back(r);
  }
  return out;
}

std::vector<std::string> missing_from(const SystemDef& a, const SystemDef& b) {
  const auto have = principles(b);
  std::vector<std::string> out;
  for (const auto& p : principles(a)) {
    if (std::find(have.begin(), have.end(), p) == have.end()) out.push_back(p);
  }
  return out;
}

struct Pair {
  const char* smaller;
  const char* larger;
  const char* printed_fixture;  // nullptr when none is given
};

constexpr Pair kPairs[] = {
    {"FCP_2", "FCP_1", "corollary3_model1.json"},
    {"FCP_1", "FCP_3", "corollary3_model1_extended.json"},
    {"FCP_3", "FCP_6", nullptr},
    {"FCP_2", "FCP_4", nullptr},
    {"FCP_4", "FCP_5", "corollary3_model2.json"},
    {"FCP_5", "FCP_6", "corollary3_model1_extended.json"},
    {"FCP_1", "FCP_5", nullptr},
};

}  // namespace

const std::vector<PropertyImplication>& property_implications() {
  static const std::vector<PropertyImplication> v = {
      {{P::IFCPO}, P::AFCPO},
      {{P::IFCPP}, P::AFCPP},
      {{P::IFCP2P}, P::AFCP2P},
      {{P::AFCP2P}, P::AFCPP},
      {{P::IFCP2P}, P::IFCPP},
      {{P::IFCPP}, P::IFCP2P},
      {{P::AFCPO, P::AFCPP}, P::AFCP2P},
      {{P::OSupplemented, P::AFCPO}, P::IFCPO},
      {{P::OSupplemented, P::AFCPP}, P::IFCPP},
      {{P::OSupplemented, P::AFCP2P}, P::IFCP2P},
  };
  return v;
}

std::set<FrameProperty> property_closure(std::set<FrameProperty> props) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& imp : property_implications()) {
      if (props.contains(imp.conclusion)) continue;
      if (std::includes(props.begin(), props.end(), imp.premises.begin(), imp.premises.end())) {
        props.insert(imp.conclusion);
        grew = true;
      }
    }
  }
  return props;
}

bool InclusionFact::included() const {
  return std::all_of(evidence.begin(), evidence.end(), [](const DerivationCheck& d) { return d.verdict.valid; });
}

bool InclusionFact::collapses() const {
  return std::all_of(converse.begin(), converse.end(), [](const DerivationCheck& d) { return d.verdict.valid; });
}

bool InclusionFact::strict() const {
  return included() && separator && separator->verified() && !collapses();
}

SeparatorCheck check_separator(const std::filesystem::path& model_path, const SystemRegistry& registry,
                               std::string_view smaller, std::string_view larger) {
  SeparatorCheck out;
  out.fixture = model_path.filename().string();
  try {
    const NeighbourhoodModel m = load_model(model_path);
    const auto props = classify_frame(m);
    for (auto p : registry.frame_class(smaller)) {
      if (!props.contains(p)) out.missing.insert(p);
    }
    for (const auto& name : principles(registry.get(larger))) {
      bool valid = true;
      if (const Schema* s = find_axiom(name)) {
        valid = schema_valid_on_frame(m.frame(), *s).valid();
      } else if (const RuleSchema* r = find_rule(name)) {
        valid = rule_valid_on_frame(m.frame(), *r).valid();
      }
      if (!valid) {
        out.falsified = name;
        break;
      }
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

std::vector<InclusionFact> inclusion_report(const SystemRegistry& registry,
                                            const std::filesystem::path& fixtures_dir) {
  std::vector<std::filesystem::path> separators;
  if (std::filesystem::is_directory(fixtures_dir / "separators")) {
    for (const auto& e : std::filesystem::directory_iterator(fixtures_dir / "separators")) {
      if (e.path().extension() == ".json") separators.push_back(e.path());
    }
    std::sort(separators.begin(), separators.end());
  }

  std::vector<InclusionFact> out;
  for (const auto& pair : kPairs) {
    const SystemDef& small = registry.get(pair.smaller);
    const SystemDef& large = registry.get(pair.larger);
    InclusionFact fact{small.name, large.name, {}, {}, {}, {}, false};

    for (const auto& p : missing_from(small, large)) {
      const auto script = fixtures_dir / "table1" / large.name / (p + ".proof");
      fact.evidence.push_back({large.name, p, script, verify_derivation(script, large.name, p, registry, fixtures_dir)});
    }
    for (const auto& p : missing_from(large, small)) {
      auto script = fixtures_dir / "table1" / small.name / (p + ".proof");
      if (!std::filesystem::exists(script)) script = fixtures_dir / "equivalences" / (small.name + "-" + p + ".proof");
      fact.converse.push_back({small.name, p, script, verify_derivation(script, small.name, p, registry, fixtures_dir)});
    }

    if (pair.printed_fixture) {
      fact.printed_fixture = check_separator(fixtures_dir / pair.printed_fixture, registry, small.name, large.name);
    }
    for (const auto& path : separators) {
      auto check = check_separator(path, registry, small.name, large.name);
      if (check.verified()) {
        fact.separator = std::move(check);
        break;
      }
    }

    const auto larger_closed = property_closure(registry.frame_class(large.name));
    const auto smaller_class = registry.frame_class(small.name);
    fact.antitone = std::includes(larger_closed.begin(), larger_closed.end(), smaller_class.begin(), smaller_class.end());
    out.push_back(std::move(fact));
  }
  return out;
}

}  // namespace deontic
