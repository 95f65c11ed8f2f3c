#include "deontic/schema.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace deontic {

namespace {

bool match_into(const Formula& pattern, const Formula& f, const std::set<std::string>& metavars,
                Substitution& sigma) {
  if (pattern.is(Connective::Atom) && metavars.contains(pattern.name())) {
    auto [it, inserted] = sigma.try_emplace(pattern.name(), f);
    return inserted || it->second == f;
  }
  if (pattern.connective() != f.connective()) return false;
  if (pattern.is(Connective::Atom)) return pattern.name() == f.name();
  if (pattern.is_unary()) return match_into(pattern.operand(), f.operand(), metavars, sigma);
  if (pattern.is_binary()) {
    return match_into(pattern.lhs(), f.lhs(), metavars, sigma) &&
           match_into(pattern.rhs(), f.rhs(), metavars, sigma);
  }
  return true;  // T, F
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Schema Schema::from_text(std::string name, std::string_view text) {
  Formula body = parse(text);
  std::set<std::string> metas;
  for (const auto& a : atoms(body)) {
    if (a == "p" || a == "q" || a == "r" || a == "s") metas.insert(a);
  }
  return Schema{std::move(name), std::move(body), std::move(metas)};
}

Schema Schema::from_text(std::string name, std::string_view text,
                         std::set<std::string> metavariables) {
  return Schema{std::move(name), parse(text), std::move(metavariables)};
}

bool Schema::is_pure() const {
  const auto as = atoms(body);
  return std::all_of(as.begin(), as.end(),
                     [&](const std::string& a) { return metavariables.contains(a); });
}

std::optional<Substitution> match_schema(const Schema& s, const Formula& f) {
  Substitution sigma;
  if (!match_into(s.body, f, s.metavariables, sigma)) return std::nullopt;
  return sigma;
}

Formula substitute(const Formula& f, const Substitution& sigma) {
  switch (f.connective()) {
    case Connective::Atom: {
      auto it = sigma.find(f.name());
      return it == sigma.end() ? f : it->second;
    }
    case Connective::Top:
    case Connective::Bottom: return f;
    case Connective::Not: return Formula::negation(substitute(f.operand(), sigma));
    case Connective::Obl:
    case Connective::PermS:
    case Connective::PermW: return Formula::modal(f.modality(), substitute(f.operand(), sigma));
    case Connective::And:
      return Formula::conjunction(substitute(f.lhs(), sigma), substitute(f.rhs(), sigma));
    case Connective::Or:
      return Formula::disjunction(substitute(f.lhs(), sigma), substitute(f.rhs(), sigma));
    case Connective::Implies:
      return Formula::implication(substitute(f.lhs(), sigma), substitute(f.rhs(), sigma));
    case Connective::Iff:
      return Formula::biconditional(substitute(f.lhs(), sigma), substitute(f.rhs(), sigma));
  }
  return f;
}

Formula instantiate(const Schema& s, const Substitution& sigma) {
  for (const auto& m : s.metavariables) {
    if (!sigma.contains(m)) {
      throw std::invalid_argument("schema " + s.name + ": metavariable '" + m + "' is unbound");
    }
  }
  Substitution restricted;
  for (const auto& [k, v] : sigma) {
    if (s.metavariables.contains(k)) restricted.emplace(k, v);
  }
  return substitute(s.body, restricted);
}

std::string render(const Substitution& sigma) {
  std::string out = "[";
  bool first = true;
  for (const auto& [k, v] : sigma) {
    if (!first) out += ", ";
    first = false;
    out += k + " := " + render(v);
  }
  return out + "]";
}

Substitution parse_substitution(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw std::invalid_argument("unterminated substitution");
    text = trim(text.substr(1, text.size() - 2));
  }
  Substitution sigma;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : trim(text.substr(comma + 1));
    const auto arrow = item.find(":=");
    if (arrow == std::string_view::npos) {
      throw std::invalid_argument("substitution item '" + std::string(item) + "' lacks ':='");
    }
    const std::string var(trim(item.substr(0, arrow)));
    if (!is_valid_atom_name(var)) {
      throw std::invalid_argument("bad metavariable '" + var + "'");
    }
    if (!sigma.emplace(var, parse(item.substr(arrow + 2))).second) {
      throw std::invalid_argument("metavariable '" + var + "' bound twice");
    }
  }
  return sigma;
}

}  // namespace deontic
