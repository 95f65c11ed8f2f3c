#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "deontic/formula.hpp"

namespace deontic {

using Substitution = std::map<std::string, Formula>;

/// A formula whose metavariable atoms stand for arbitrary formulas. Atoms not
/// declared as metavariables are concrete and must match literally.
struct Schema {
  std::string name;
  Formula body;
  std::set<std::string> metavariables;

  /// Parses `text`; by default every atom among p, q, r, s is a metavariable.
  static Schema from_text(std::string name, std::string_view text);
  static Schema from_text(std::string name, std::string_view text,
                          std::set<std::string> metavariables);

  bool is_pure() const;  // no concrete atoms
};

/// A rule "side conditions are theorems => premise -> conclusion". Premise
/// may be T for rules with only theorem premises (RE, RM).
struct RuleSchema {
  std::string name;
  Formula premise;
  std::vector<Formula> side_conditions;
  Formula conclusion;
  std::set<std::string> metavariables;
};

std::optional<Substitution> match_schema(const Schema& s, const Formula& f);

/// Throws std::invalid_argument if a metavariable of `s` is unbound.
Formula instantiate(const Schema& s, const Substitution& sigma);

/// Substitutes atoms by name; atoms not in `sigma` stay as they are.
Formula substitute(const Formula& f, const Substitution& sigma);

std::string render(const Substitution& sigma);

/// Parses "[p := a, q := b | c]" (brackets optional).
Substitution parse_substitution(std::string_view text);

}  // namespace deontic
