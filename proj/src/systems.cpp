#include "deontic/systems.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "deontic/model_io.hpp"

namespace deontic {

namespace {

std::string fold(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '-') continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

RuleSchema rule(std::string name, std::string_view premise, std::vector<std::string_view> sides,
                std::string_view conclusion) {
  RuleSchema r{std::move(name), parse(premise), {}, parse(conclusion), {}};
  for (auto s : sides) r.side_conditions.push_back(parse(s));
  std::set<std::string> all = atoms(r.premise);
  for (const auto& a : atoms(r.conclusion)) all.insert(a);
  for (const auto& s : r.side_conditions) {
    for (const auto& a : atoms(s)) all.insert(a);
  }
  r.metavariables = std::move(all);
  return r;
}

using P = FrameProperty;

std::set<FrameProperty> with(std::set<FrameProperty> base, std::initializer_list<FrameProperty> extra) {
  base.insert(extra);
  return base;
}

}  // namespace

const std::vector<Schema>& axiom_inventory() {
  static const std::vector<Schema> inv = {
      Schema::from_text("M_O", "O(p & q) -> O p & O q"),
      Schema::from_text("M_Ps", "Ps(p & q) -> Ps p & Ps q"),
      Schema::from_text("AFCP_O", "Ps(p | q) & O ~p -> Ps q"),
      Schema::from_text("AFCP_P", "Ps(p | q) & Pw p & Pw q -> Ps p & Ps q"),
      Schema::from_text("AFCP2_P", "Ps(p | q) & Pw p -> Ps p"),
      Schema::from_text("D_s", "O p & Ps ~p -> F"),
      Schema::from_text("D_w", "O p & O ~p -> F"),
      Schema::from_text("P_sP_w", "Ps p -> Pw p"),
      Schema::from_text("FCP", "Ps(p | q) -> Ps p & Ps q"),
  };
  return inv;
}

const Schema* find_axiom(std::string_view name) {
  for (const auto& s : axiom_inventory()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const std::vector<RuleSchema>& rule_inventory() {
  static const std::vector<RuleSchema> inv = {
      rule("RE_O", "T", {"p <-> q"}, "O p <-> O q"),
      rule("RE_Ps", "T", {"p <-> q"}, "Ps p <-> Ps q"),
      rule("RM_O", "T", {"p -> q"}, "O p -> O q"),
      rule("RM_Ps", "T", {"p -> q"}, "Ps p -> Ps q"),
      rule("IFCP_O", "Ps(p | q) & O r", {"r -> ~p"}, "Ps q"),
      rule("IFCP_P", "Ps(p | q) & (Pw r & Pw s)", {"r -> p", "s -> q"}, "Ps p & Ps q"),
      rule("IFCP2_P", "Ps(p | q) & Pw r", {"r -> p"}, "Ps p"),
  };
  return inv;
}

const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n = {"MP", "Taut"};
    for (const auto& r : rule_inventory()) n.push_back(r.name);
    return n;
  }();
  return names;
}

const RuleSchema* find_rule(std::string_view name) {
  for (const auto& r : rule_inventory()) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

bool is_known_rule(std::string_view name) {
  const auto& n = rule_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

bool SystemDef::has_axiom(std::string_view a) const {
  return std::find(axioms.begin(), axioms.end(), a) != axioms.end();
}

bool SystemDef::has_rule(std::string_view r) const {
  return std::find(rules.begin(), rules.end(), r) != rules.end();
}

bool SystemDef::admits_rm(Modality m) const {
  switch (m) {
    case Modality::Obligation:
    case Modality::WeakPermission: return has_rule("RM_O") || has_axiom("M_O");
    case Modality::StrongPermission: return has_rule("RM_Ps") || has_axiom("M_Ps");
  }
  return false;
}

bool SystemDef::admits_re(Modality m) const {
  return m == Modality::StrongPermission ? has_rule("RE_Ps") : has_rule("RE_O");
}

SystemRegistry SystemRegistry::with_builtins() {
  SystemRegistry reg;
  const std::set<FrameProperty> min_class = {P::PsCoherent, P::PwCoherent};
  const std::vector<std::string> min_axioms = {"D_s", "D_w"};
  auto extend = [](std::vector<std::string> v, std::initializer_list<std::string> extra) {
    v.insert(v.end(), extra);
    return v;
  };
  reg.define({"E", {}, {}, std::set<FrameProperty>{}, {}, {}});
  reg.define({"Min", min_axioms, {}, min_class, {"P_sP_w"}, {}});
  reg.define({"FCP_1", min_axioms, {"IFCP_O", "IFCP_P"}, with(min_class, {P::IFCPO, P::IFCPP}),
              {"P_sP_w", "AFCP_O", "AFCP_P"}, {}});
  reg.define({"FCP_2", extend(min_axioms, {"AFCP_O", "AFCP_P"}), {}, with(min_class, {P::AFCPO, P::AFCPP}),
              {"P_sP_w"}, {}});
  reg.define({"FCP_3", extend(min_axioms, {"AFCP_O", "AFCP_P", "M_O", "M_Ps"}), {},
              with(min_class, {P::AFCPO, P::AFCPP, P::PSupplemented, P::OSupplemented}),
              {"P_sP_w", "IFCP_O", "IFCP_P"}, {}});
  reg.define({"FCP_4", extend(min_axioms, {"AFCP_O", "AFCP2_P"}), {}, with(min_class, {P::AFCPO, P::AFCP2P}),
              {"P_sP_w", "AFCP_P"}, {}});
  reg.define({"FCP_5", min_axioms, {"IFCP_O", "IFCP2_P"}, with(min_class, {P::IFCPO, P::IFCP2P}),
              {"P_sP_w", "IFCP_P", "AFCP_O", "AFCP_P", "AFCP2_P"}, {}});
  reg.define({"FCP_6", extend(min_axioms, {"AFCP_O", "AFCP2_P", "M_O", "M_Ps"}), {},
              with(min_class, {P::IFCPO, P::IFCP2P, P::PSupplemented, P::OSupplemented}),
              {"P_sP_w", "IFCP_P", "AFCP_O", "AFCP_P", "AFCP2_P", "IFCP2_P", "IFCP_O"},
              {"IFCP2_O"}});
  return reg;
}

bool SystemRegistry::contains(std::string_view name) const {
  const std::string key = fold(name);
  return std::any_of(systems_.begin(), systems_.end(),
                     [&](const SystemDef& s) { return fold(s.name) == key; });
}

const SystemDef& SystemRegistry::get(std::string_view name) const {
  const std::string key = fold(name);
  for (const auto& s : systems_) {
    if (fold(s.name) == key) return s;
  }
  throw SystemError("unknown system '" + std::string(name) + "'");
}

const std::string& SystemRegistry::define(SystemDef def) {
  if (def.name.empty()) throw SystemError("system name is empty");
  if (contains(def.name)) throw SystemError("system '" + def.name + "' is already defined");
  for (const auto& a : def.axioms) {
    if (!find_axiom(a)) throw SystemError("system " + def.name + ": unknown axiom '" + a + "'");
  }
  for (const auto& r : def.rules) {
    if (!is_known_rule(r)) throw SystemError("system " + def.name + ": unknown rule '" + r + "'");
  }
  std::vector<std::string> rules = {"MP", "Taut", "RE_O", "RE_Ps"};
  for (const auto& r : def.rules) {
    if (std::find(rules.begin(), rules.end(), r) == rules.end()) rules.push_back(r);
  }
  def.rules = std::move(rules);
  systems_.push_back(std::move(def));
  return systems_.back().name;
}

std::set<FrameProperty> SystemRegistry::frame_class(std::string_view name) const {
  const SystemDef& s = get(name);
  if (!s.frame_class) throw SystemError("system '" + s.name + "' has no adequate frame class on record");
  return *s.frame_class;
}

std::vector<std::string> SystemRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& s : systems_) out.push_back(s.name);
  return out;
}

SystemDef parse_system_definition(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SystemError(std::string("malformed system definition: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("name") || !doc["name"].is_string()) {
    throw SystemError("system definition needs a string `name`");
  }
  auto names = [&](const char* key) {
    std::vector<std::string> out;
    if (!doc.contains(key)) return out;
    if (!doc[key].is_array()) throw SystemError(std::string("`") + key + "` must be a list");
    for (const auto& e : doc[key]) {
      if (!e.is_string()) throw SystemError(std::string("`") + key + "` entries must be strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  };
  SystemDef def;
  def.name = doc["name"].get<std::string>();
  def.axioms = names("axioms");
  def.rules = names("rules");
  if (doc.contains("frame_class")) {
    std::set<FrameProperty> cls;
    for (const auto& p : names("frame_class")) {
      const auto prop = parse_property(p);
      if (!prop) throw SystemError("unknown frame property '" + p + "'");
      cls.insert(*prop);
    }
    def.frame_class = std::move(cls);
  }
  return def;
}

SystemDef load_system_definition(const std::filesystem::path& path) {
  try {
    return parse_system_definition(read_text_file(resolve_with_extension(path, ".json")));
  } catch (const SystemError&) {
    throw;
  } catch (const std::exception& e) {
    throw SystemError(e.what());
  }
}

const std::vector<Correspondence>& correspondences() {
  static const std::vector<Correspondence> table = {
      {"D_s", P::PsCoherent, false},  {"D_w", P::PwCoherent, false}, {"AFCP_O", P::AFCPO, false},
      {"AFCP_P", P::AFCPP, false},    {"AFCP2_P", P::AFCP2P, false}, {"IFCP_O", P::IFCPO, true},
      {"IFCP_P", P::IFCPP, true},     {"IFCP2_P", P::IFCP2P, true},
  };
  return table;
}

}  // namespace deontic
