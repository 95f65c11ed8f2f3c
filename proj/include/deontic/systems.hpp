#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "deontic/frames.hpp"
#include "deontic/schema.hpp"

namespace deontic {

/// Axiom schemata known to the engine: M_O, M_Ps, AFCP_O, AFCP_P, AFCP2_P,
/// D_s, D_w, P_sP_w, FCP.
const std::vector<Schema>& axiom_inventory();
const Schema* find_axiom(std::string_view name);

/// Rules: MP and Taut are structural; RE_O, RE_Ps, RM_O, RM_Ps, IFCP_O,
/// IFCP_P, IFCP2_P also have a RuleSchema for frame checks.
const std::vector<std::string>& rule_names();
const std::vector<RuleSchema>& rule_inventory();
const RuleSchema* find_rule(std::string_view name);
bool is_known_rule(std::string_view name);

struct SystemDef {
  std::string name;
  std::vector<std::string> axioms;
  std::vector<std::string> rules;
  /// Adequate frame class; empty optional for user systems without one.
  std::optional<std::set<FrameProperty>> frame_class;
  /// Table 1 "Derivable" column (schema or rule names).
  std::vector<std::string> derivable;
  /// Derivable entries that cannot be checked.
  std::vector<std::string> unresolved;

  bool has_axiom(std::string_view a) const;
  bool has_rule(std::string_view r) const;
  /// RM for a modality is available when listed, or when M for that
  /// modality is an axiom. Modality is "O", "Ps" or "Pw" (dual of O).
  bool admits_rm(Modality m) const;
  bool admits_re(Modality m) const;
};

class SystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SystemRegistry {
 public:
  /// E, Min, FCP_1 .. FCP_6.
  static SystemRegistry with_builtins();

  bool contains(std::string_view name) const;
  /// Throws SystemError for unknown names. Lookup ignores case, '_' and '-'.
  const SystemDef& get(std::string_view name) const;
  /// Adds MP, Taut, RE_O and RE_Ps if missing. Throws SystemError for a
  /// duplicate name or an unknown axiom or rule.
  const std::string& define(SystemDef def);
  /// Throws SystemError for systems without an adequate frame class.
  std::set<FrameProperty> frame_class(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::vector<SystemDef> systems_;
};

/// {"name": ..., "axioms": [...], "rules": [...], "frame_class": [...]?}
SystemDef parse_system_definition(std::string_view json_text);
SystemDef load_system_definition(const std::filesystem::path& path);

/// A principle paired with the frame property it corresponds to.
struct Correspondence {
  std::string principle;  // axiom or rule name
  FrameProperty property;
  bool is_rule;
};
const std::vector<Correspondence>& correspondences();

}  // namespace deontic
