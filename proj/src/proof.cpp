#include "deontic/proof.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <set>

#include "deontic/model_io.hpp"
#include "deontic/tautology.hpp"

namespace deontic {

std::string_view to_string(Tier t) { return t == Tier::Theorem ? "theorem" : "local"; }

ProofParseError::ProofParseError(std::size_t source_line, const std::string& message)
    : std::runtime_error("line " + std::to_string(source_line) + ": " + message),
      source_line_(source_line) {}

namespace {

using Kind = Justification::Kind;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<std::size_t> to_index(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// Splits on separators that are outside square brackets.
std::vector<std::string_view> split_top(std::string_view s, std::string_view seps) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
    if (depth == 0 && seps.find(s[i]) != std::string_view::npos) {
      if (auto piece = trim(s.substr(start, i - start)); !piece.empty()) out.push_back(piece);
      start = i + 1;
    }
  }
  if (auto piece = trim(s.substr(start)); !piece.empty()) out.push_back(piece);
  return out;
}

Modality parse_modality(std::string_view s, std::size_t src) {
  if (s == "O") return Modality::Obligation;
  if (s == "Ps") return Modality::StrongPermission;
  if (s == "Pw") return Modality::WeakPermission;
  throw ProofParseError(src, "expected modality O, Ps or Pw, found '" + std::string(s) + "'");
}

AxiomCitation parse_citation(std::string_view item, bool need_sigma, bool& has_sigma, std::size_t src) {
  item = trim(item);
  const auto bracket = item.find('[');
  AxiomCitation c;
  c.name = std::string(trim(item.substr(0, bracket)));
  if (c.name.empty() || c.name.find_first_of(" \t") != std::string::npos) {
    throw ProofParseError(src, "malformed axiom citation '" + std::string(item) + "'");
  }
  has_sigma = bracket != std::string_view::npos;
  if (!has_sigma && need_sigma) {
    throw ProofParseError(src, "axiom citation '" + c.name + "' needs a substitution");
  }
  if (has_sigma) {
    try {
      c.sigma = parse_substitution(item.substr(bracket));
    } catch (const std::exception& e) {
      throw ProofParseError(src, e.what());
    }
  }
  return c;
}

std::vector<std::size_t> parse_index_list(std::string_view s, std::size_t src) {
  std::vector<std::size_t> out;
  for (auto piece : split_top(s, ", ")) {
    auto v = to_index(piece);
    if (!v) throw ProofParseError(src, "expected a line number, found '" + std::string(piece) + "'");
    out.push_back(*v);
  }
  return out;
}

std::optional<std::size_t> parse_side(std::string_view s, std::size_t src) {
  s = trim(s);
  if (s.starts_with("side=")) s.remove_prefix(5);
  if (s == "taut") return std::nullopt;
  auto v = to_index(s);
  if (!v) throw ProofParseError(src, "expected a line number or 'taut', found '" + std::string(s) + "'");
  return v;
}

Justification parse_justification(std::string_view text, std::size_t src) {
  text = trim(text);
  const auto space = text.find_first_of(" \t");
  const std::string kind = lower(text.substr(0, space));
  const std::string_view rest = space == std::string_view::npos ? "" : trim(text.substr(space));
  Justification j;
  auto no_args = [&](Kind k) {
    if (!rest.empty()) throw ProofParseError(src, "'" + kind + "' takes no arguments");
    j.kind = k;
  };
  if (kind == "hyp") {
    no_args(Kind::Hyp);
  } else if (kind == "premise") {
    no_args(Kind::Premise);
  } else if (kind == "taut") {
    no_args(Kind::Taut);
  } else if (kind == "ax") {
    j.kind = Kind::Axiom;
    j.axiom = parse_citation(rest, false, j.axiom_has_sigma, src);
  } else if (kind == "mp") {
    j.kind = Kind::MP;
    j.cites = parse_index_list(rest, src);
    if (j.cites.size() != 2) throw ProofParseError(src, "mp needs exactly two line numbers");
  } else if (kind == "cpl") {
    j.kind = Kind::CPL;
    for (auto item : split_top(rest, ",")) {
      if (auto v = to_index(item)) {
        j.cites.push_back(*v);
      } else {
        bool has_sigma = false;
        j.inline_axioms.push_back(parse_citation(item, true, has_sigma, src));
      }
    }
  } else if (kind == "re" || kind == "rm") {
    j.kind = kind == "re" ? Kind::RE : Kind::RM;
    auto parts = split_top(rest, " \t");
    if (parts.size() != 2) throw ProofParseError(src, kind + " needs a line number and a modality");
    auto v = to_index(parts[0]);
    if (!v) throw ProofParseError(src, "expected a line number, found '" + std::string(parts[0]) + "'");
    j.cites = {*v};
    j.modality = parse_modality(parts[1], src);
  } else if (kind == "ifcp_o" || kind == "ifcp_p" || kind == "ifcp2_p") {
    j.kind = kind == "ifcp_o" ? Kind::IFCPO : kind == "ifcp_p" ? Kind::IFCPP : Kind::IFCP2P;
    const std::size_t side_count = j.kind == Kind::IFCPP ? 2 : 1;
    // Glue "1, 2" into "1,2" so the main premise list is one token.
    std::string packed;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      packed += rest[i];
      if (rest[i] == ',') {
        while (i + 1 < rest.size() && std::isspace(static_cast<unsigned char>(rest[i + 1]))) ++i;
      }
    }
    auto tokens = split_top(packed, " \t");
    if (tokens.size() < side_count || tokens.size() > side_count + 1) {
      throw ProofParseError(src, kind + " expects [main premise lines] and " + std::to_string(side_count) +
                                     " side condition(s)");
    }
    if (tokens.size() == side_count + 1) j.cites = parse_index_list(tokens[0], src);
    for (std::size_t i = tokens.size() - side_count; i < tokens.size(); ++i) {
      j.sides.push_back(parse_side(tokens[i], src));
    }
  } else {
    throw ProofParseError(src, "unknown justification '" + kind + "'");
  }
  return j;
}

Formula parse_at(std::string_view text, std::size_t src) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ProofParseError(src, e.what());
  }
}

std::string join_indices(const std::vector<std::size_t>& v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

std::string render(const Justification& j) {
  auto side = [](const std::optional<std::size_t>& s) { return s ? std::to_string(*s) : std::string("taut"); };
  auto cite = [](const AxiomCitation& c, bool with_sigma) {
    return with_sigma ? c.name + " " + render(c.sigma) : c.name;
  };
  switch (j.kind) {
    case Kind::Hyp: return "hyp";
    case Kind::Premise: return "premise";
    case Kind::Taut: return "taut";
    case Kind::Axiom: return "ax " + cite(*j.axiom, j.axiom_has_sigma);
    case Kind::MP: return "mp " + join_indices(j.cites, " ");
    case Kind::CPL: {
      std::string out = "cpl";
      std::string items = join_indices(j.cites, ",");
      for (const auto& a : j.inline_axioms) items += (items.empty() ? "" : ", ") + cite(a, true);
      return items.empty() ? out : out + " " + items;
    }
    case Kind::RE:
    case Kind::RM:
      return std::string(j.kind == Kind::RE ? "re " : "rm ") + std::to_string(j.cites.at(0)) + " " +
             std::string(modality_symbol(*j.modality));
    case Kind::IFCPO:
    case Kind::IFCPP:
    case Kind::IFCP2P: {
      std::string out = j.kind == Kind::IFCPO ? "ifcp_o" : j.kind == Kind::IFCPP ? "ifcp_p" : "ifcp2_p";
      if (!j.cites.empty()) out += " " + join_indices(j.cites, ",");
      for (std::size_t i = 0; i < j.sides.size(); ++i) {
        out += (j.kind == Kind::IFCPO ? " side=" : " ") + side(j.sides[i]);
      }
      return out;
    }
  }
  return "?";
}

ProofScript parse_proof_script(std::string_view text) {
  ProofScript script;
  std::size_t src = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++src;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    auto header = [&](std::string_view key) -> std::optional<std::string_view> {
      if (line.size() > key.size() && lower(line.substr(0, key.size())) == key) {
        return trim(line.substr(key.size()));
      }
      return std::nullopt;
    };
    if (auto v = header("system:")) {
      script.system = std::string(*v);
    } else if (auto v = header("hyp:")) {
      script.hypotheses.push_back(parse_at(*v, src));
    } else if (auto v = header("premise:")) {
      script.premises.push_back(parse_at(*v, src));
    } else if (auto v = header("goal:")) {
      script.goal = parse_at(*v, src);
    } else {
      const auto dot = line.find('.');
      const auto number = dot == std::string_view::npos ? std::nullopt : to_index(line.substr(0, dot));
      if (!number) throw ProofParseError(src, "expected a header or a numbered proof line");
      if (*number != script.lines.size() + 1) {
        throw ProofParseError(src, "proof line numbered " + std::to_string(*number) + ", expected " +
                                       std::to_string(script.lines.size() + 1));
      }
      const std::string_view body = line.substr(dot + 1);
      const auto semi = body.find(';');
      if (semi == std::string_view::npos) throw ProofParseError(src, "missing '; justification'");
      script.lines.push_back(
          {*number, parse_at(body.substr(0, semi), src), parse_justification(body.substr(semi + 1), src)});
    }
  }
  if (script.system.empty()) throw ProofParseError(src, "script has no 'system:' header");
  return script;
}

ProofScript load_proof_script(const std::filesystem::path& path) {
  return parse_proof_script(read_text_file(resolve_with_extension(path, ".proof")));
}

// ---------------------------------------------------------------------------

namespace {

struct LineFailure {
  std::string reason;
};

std::optional<Formula> modal_operand(const Formula& f, Modality m) {
  switch (m) {
    case Modality::Obligation:
      if (f.is(Connective::Obl)) return f.operand();
      break;
    case Modality::StrongPermission:
      if (f.is(Connective::PermS)) return f.operand();
      break;
    case Modality::WeakPermission:
      if (f.is(Connective::Not) && f.operand().is(Connective::Obl) &&
          f.operand().operand().is(Connective::Not)) {
        return f.operand().operand().operand();
      }
      break;
  }
  return std::nullopt;
}

class Checker {
 public:
  Checker(const SystemRegistry& reg, const CheckOptions& opt, std::set<std::string>& in_progress)
      : reg_(reg), opt_(opt), in_progress_(in_progress) {}

  ProofVerdict run(const ProofScript& script);

 private:
  Formula line_formula(std::size_t i) const { return norm_.at(i - 1); }
  Tier line_tier(std::size_t i) const { return tiers_.at(i - 1); }

  void check_cites(std::size_t current, const std::vector<std::size_t>& cites) const;
  void require_theorem(std::size_t current, std::size_t cited, std::string_view rule) const;
  Tier join(const std::vector<std::size_t>& cites) const;
  const Schema& available_axiom(const std::string& name);
  Formula instance(const AxiomCitation& c);
  Tier check_line(const ProofScript& script, const ProofLine& line);
  Tier check_ifcp(std::size_t index, const Justification& j, const Formula& l);
  bool side_ok(const std::optional<std::size_t>& side, const Formula& required) const;

  const SystemRegistry& reg_;
  const CheckOptions& opt_;
  std::set<std::string>& in_progress_;
  const SystemDef* sys_ = nullptr;
  std::vector<Formula> norm_;
  std::vector<Tier> tiers_;
};

void Checker::check_cites(std::size_t current, const std::vector<std::size_t>& cites) const {
  for (auto c : cites) {
    if (c == 0 || c >= current) {
      throw LineFailure{"cites line " + std::to_string(c) + ", which does not precede it"};
    }
  }
}

void Checker::require_theorem(std::size_t, std::size_t cited, std::string_view rule) const {
  if (line_tier(cited) != Tier::Theorem) {
    throw LineFailure{"tier violation: " + std::string(rule) + " cites local-tier line " +
                      std::to_string(cited) + "; it needs a theorem"};
  }
}

Tier Checker::join(const std::vector<std::size_t>& cites) const {
  for (auto c : cites) {
    if (line_tier(c) == Tier::Local) return Tier::Local;
  }
  return Tier::Theorem;
}

std::string lemma_key(const std::string& system, const std::string& name) { return system + "/" + name; }

const Schema& Checker::available_axiom(const std::string& name) {
  const Schema* schema = find_axiom(name);
  if (!schema) throw LineFailure{"unknown axiom '" + name + "'"};
  if (sys_->has_axiom(name)) return *schema;
  const bool derivable = std::find(sys_->derivable.begin(), sys_->derivable.end(), name) != sys_->derivable.end();
  if (!derivable || opt_.fixtures_dir.empty()) {
    throw LineFailure{"axiom " + name + " is not available in " + sys_->name};
  }
  const std::string key = lemma_key(sys_->name, name);
  if (in_progress_.contains(key)) throw LineFailure{"circular use of derived schema " + name};
  const auto path = opt_.fixtures_dir / "table1" / sys_->name / (name + ".proof");
  ProofScript lemma;
  try {
    lemma = load_proof_script(path);
  } catch (const std::exception& e) {
    throw LineFailure{"derived schema " + name + " has no usable script: " + e.what()};
  }
  if (!lemma.hypotheses.empty() || !lemma.premises.empty() || !lemma.goal ||
      expand_pw(*lemma.goal) != expand_pw(schema->body) || !reg_.contains(lemma.system) ||
      &reg_.get(lemma.system) != sys_) {
    throw LineFailure{"script for derived schema " + name + " does not prove it in " + sys_->name};
  }
  in_progress_.insert(key);
  const ProofVerdict v = Checker(reg_, opt_, in_progress_).run(lemma);
  in_progress_.erase(key);
  if (!v.valid) throw LineFailure{"derived schema " + name + " failed to verify: " + v.reason};
  return *schema;
}

Formula Checker::instance(const AxiomCitation& c) {
  const Schema& s = available_axiom(c.name);
  try {
    return expand_pw(instantiate(s, c.sigma));
  } catch (const std::invalid_argument& e) {
    throw LineFailure{e.what()};
  }
}

bool Checker::side_ok(const std::optional<std::size_t>& side, const Formula& required) const {
  if (!side) return is_tautology(required);
  const Formula premise = line_formula(*side);
  return tautological_consequence(std::span<const Formula>(&premise, 1), required);
}

Tier Checker::check_ifcp(std::size_t index, const Justification& j, const Formula& l) {
  const std::string rule = j.kind == Kind::IFCPO ? "IFCP_O" : j.kind == Kind::IFCPP ? "IFCP_P" : "IFCP2_P";
  if (!sys_->has_rule(rule)) throw LineFailure{"rule " + rule + " is not available in " + sys_->name};
  check_cites(index, j.cites);
  for (const auto& s : j.sides) {
    if (s) {
      check_cites(index, {*s});
      require_theorem(index, *s, rule + " side condition");
    }
  }
  std::vector<Formula> conj;
  Formula conclusion = l;
  Tier tier = Tier::Theorem;
  if (j.cites.empty()) {
    if (!l.is(Connective::Implies)) {
      throw LineFailure{rule + " without a main premise line must conclude premise -> conclusion"};
    }
    conj = flatten(l.lhs(), Connective::And);
    conclusion = l.rhs();
  } else {
    for (auto c : j.cites) {
      auto parts = flatten(line_formula(c), Connective::And);
      conj.insert(conj.end(), parts.begin(), parts.end());
    }
    tier = join(j.cites);
  }

  std::vector<Formula> obligations, weak;
  std::vector<std::pair<Formula, Formula>> disjunctive;  // Ps(x | y)
  for (const auto& c : conj) {
    if (c.is(Connective::Obl)) obligations.push_back(c.operand());
    if (auto r = modal_operand(c, Modality::WeakPermission)) weak.push_back(*r);
    if (c.is(Connective::PermS) && c.operand().is(Connective::Or)) {
      disjunctive.emplace_back(c.operand().lhs(), c.operand().rhs());
    }
  }
  auto fail = [&]() -> Tier {
    throw LineFailure{"not licensed by " + rule + " from the cited premise and side condition(s)"};
  };
  auto weak_side = [&](const Formula& target, const std::optional<std::size_t>& side) {
    return std::any_of(weak.begin(), weak.end(), [&](const Formula& r) {
      return side_ok(side, Formula::implication(r, target));
    });
  };

  if (j.kind == Kind::IFCPO) {
    if (!conclusion.is(Connective::PermS)) return fail();
    const Formula q = conclusion.operand();
    for (const auto& [p, rhs] : disjunctive) {
      if (rhs != q) continue;
      for (const auto& r : obligations) {
        if (side_ok(j.sides[0], Formula::implication(r, Formula::negation(p)))) return tier;
      }
    }
    return fail();
  }
  if (j.kind == Kind::IFCPP) {
    if (!conclusion.is(Connective::And) || !conclusion.lhs().is(Connective::PermS) ||
        !conclusion.rhs().is(Connective::PermS)) {
      return fail();
    }
    const Formula p = conclusion.lhs().operand();
    const Formula q = conclusion.rhs().operand();
    const bool has = std::any_of(disjunctive.begin(), disjunctive.end(),
                                 [&](const auto& d) { return d.first == p && d.second == q; });
    if (has && weak_side(p, j.sides[0]) && weak_side(q, j.sides[1])) return tier;
    return fail();
  }
  if (!conclusion.is(Connective::PermS)) return fail();
  const Formula p = conclusion.operand();
  const bool has = std::any_of(disjunctive.begin(), disjunctive.end(),
                               [&](const auto& d) { return d.first == p; });
  if (has && weak_side(p, j.sides[0])) return tier;
  return fail();
}

Tier Checker::check_line(const ProofScript& script, const ProofLine& line) {
  const Justification& j = line.justification;
  const Formula l = expand_pw(line.formula);
  const std::size_t index = line.index;
  auto member = [&](const std::vector<Formula>& v) {
    return std::any_of(v.begin(), v.end(), [&](const Formula& h) { return expand_pw(h) == l; });
  };
  switch (j.kind) {
    case Kind::Hyp:
      if (!member(script.hypotheses)) throw LineFailure{"not a declared hypothesis"};
      return Tier::Local;
    case Kind::Premise:
      if (!member(script.premises)) throw LineFailure{"not a declared premise"};
      return Tier::Theorem;
    case Kind::Taut:
      if (!is_tautology(l)) throw LineFailure{"not a propositional tautology"};
      return Tier::Theorem;
    case Kind::Axiom: {
      const Schema& s = available_axiom(j.axiom->name);
      if (j.axiom_has_sigma) {
        if (instance(*j.axiom) != l) {
          throw LineFailure{"not the instance of " + s.name + " under " + render(j.axiom->sigma)};
        }
      } else {
        const Schema normalized{s.name, expand_pw(s.body), s.metavariables};
        if (!match_schema(normalized, l)) throw LineFailure{"not an instance of " + s.name};
      }
      return Tier::Theorem;
    }
    case Kind::MP: {
      check_cites(index, j.cites);
      const Formula a = line_formula(j.cites[0]);
      const Formula b = line_formula(j.cites[1]);
      if (b != Formula::implication(a, l) && a != Formula::implication(b, l)) {
        throw LineFailure{"modus ponens does not apply to lines " + join_indices(j.cites, " and ")};
      }
      return join(j.cites);
    }
    case Kind::CPL: {
      check_cites(index, j.cites);
      std::vector<Formula> premises;
      for (auto c : j.cites) premises.push_back(line_formula(c));
      for (const auto& a : j.inline_axioms) premises.push_back(instance(a));
      if (!tautological_consequence(premises, l)) {
        throw LineFailure{"not a tautological consequence of the cited lines"};
      }
      return join(j.cites);
    }
    case Kind::RE:
    case Kind::RM: {
      const bool re = j.kind == Kind::RE;
      const std::string rule = re ? "RE" : "RM";
      const Modality m = *j.modality;
      if (re ? !sys_->admits_re(m) : !sys_->admits_rm(m)) {
        throw LineFailure{rule + " for " + std::string(modality_symbol(m)) + " is not available in " + sys_->name};
      }
      check_cites(index, j.cites);
      require_theorem(index, j.cites[0], rule);
      const Formula f = line_formula(j.cites[0]);
      const Connective c = re ? Connective::Iff : Connective::Implies;
      if (f.is(c)) {
        const Formula lhs = Formula::modal(m, f.lhs());
        const Formula rhs = Formula::modal(m, f.rhs());
        const Formula expected = expand_pw(re ? Formula::biconditional(lhs, rhs) : Formula::implication(lhs, rhs));
        if (expected == l) return Tier::Theorem;
      }
      if (re) {
        // From ⊢ □A and A <-> B a tautology, conclude ⊢ □B.
        const auto a = modal_operand(f, m);
        const auto b = modal_operand(l, m);
        if (a && b && is_tautology(Formula::biconditional(*a, *b))) return Tier::Theorem;
      }
      throw LineFailure{rule + " does not yield this formula from line " + std::to_string(j.cites[0])};
    }
    case Kind::IFCPO:
    case Kind::IFCPP:
    case Kind::IFCP2P: return check_ifcp(index, j, l);
  }
  throw LineFailure{"unhandled justification"};
}

ProofVerdict Checker::run(const ProofScript& script) {
  ProofVerdict verdict;
  if (!reg_.contains(script.system)) {
    verdict.reason = "unknown system '" + script.system + "'";
    return verdict;
  }
  sys_ = &reg_.get(script.system);
  for (const auto& line : script.lines) {
    try {
      const Tier t = check_line(script, line);
      norm_.push_back(expand_pw(line.formula));
      tiers_.push_back(t);
    } catch (const LineFailure& f) {
      verdict.line = line.index;
      verdict.reason = f.reason;
      verdict.tiers = tiers_;
      return verdict;
    }
  }
  verdict.tiers = tiers_;
  if (script.lines.empty()) {
    verdict.reason = "script has no proof lines";
    return verdict;
  }
  if (script.goal && expand_pw(*script.goal) != norm_.back()) {
    verdict.line = script.lines.size();
    verdict.reason = "last line is not the goal " + render(*script.goal);
    return verdict;
  }
  verdict.valid = true;
  return verdict;
}

}  // namespace

ProofVerdict check_proof(const ProofScript& script, const SystemRegistry& registry, const CheckOptions& options) {
  std::set<std::string> in_progress;
  return Checker(registry, options, in_progress).run(script);
}

bool Table1Report::all_valid() const {
  return std::all_of(entries.begin(), entries.end(), [](const Table1Entry& e) { return e.verdict.valid; });
}

ProofVerdict verify_derivation(const std::filesystem::path& script_path, std::string_view system,
                               std::string_view principle, const SystemRegistry& registry,
                               const std::filesystem::path& fixtures_dir) {
  ProofVerdict verdict;
  try {
    const SystemDef& sys = registry.get(system);
    const ProofScript script = load_proof_script(script_path);
    auto same = [](const std::vector<Formula>& a, const std::vector<Formula>& b) {
      std::set<Formula> x, y;
      for (const auto& f : a) x.insert(expand_pw(f));
      for (const auto& f : b) y.insert(expand_pw(f));
      return x == y;
    };
    const std::string name(principle);
    if (registry.get(script.system).name != sys.name) {
      verdict.reason = "script is written for " + script.system;
    } else if (const Schema* s = find_axiom(name)) {
      if (!script.hypotheses.empty() || !script.premises.empty() || !script.goal ||
          expand_pw(*script.goal) != expand_pw(s->body)) {
        verdict.reason = "script does not conclude the schema " + render(s->body) + " outright";
      }
    } else if (const RuleSchema* r = find_rule(name)) {
      if (!same(script.hypotheses, {r->premise}) || !same(script.premises, r->side_conditions) ||
          !script.goal || expand_pw(*script.goal) != expand_pw(r->conclusion)) {
        verdict.reason = "script does not derive the rule " + name + " from its premise and side conditions";
      }
    } else {
      verdict.reason = "unknown schema or rule";
    }
    if (verdict.reason.empty()) verdict = check_proof(script, registry, CheckOptions{fixtures_dir});
  } catch (const std::exception& e) {
    verdict.reason = std::string("missing or unreadable script: ") + e.what();
  }
  return verdict;
}

Table1Report verify_table1(std::string_view system, const SystemRegistry& registry,
                           const std::filesystem::path& fixtures_dir) {
  const SystemDef& sys = registry.get(system);
  Table1Report report{sys.name, {}, sys.unresolved};
  for (const auto& name : sys.derivable) {
    Table1Entry entry{name, fixtures_dir / "table1" / sys.name / (name + ".proof"), {}};
    entry.verdict = verify_derivation(entry.script, sys.name, name, registry, fixtures_dir);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

ScenarioResult run_scenario(std::string_view name, const SystemRegistry& registry,
                            const std::filesystem::path& fixtures_dir) {
  const auto path = fixtures_dir / "scenarios" / (std::string(name) + ".proof");
  if (!std::filesystem::is_regular_file(path)) {
    throw std::runtime_error("unknown scenario '" + std::string(name) + "'");
  }
  return replay_script(std::string(name), load_proof_script(path), registry, fixtures_dir);
}

ScenarioResult replay_script(std::string name, const ProofScript& script, const SystemRegistry& registry,
                             const std::filesystem::path& fixtures_dir) {
  ScenarioResult result{std::move(name), check_proof(script, registry, CheckOptions{fixtures_dir}), {}, {}};
  result.transcript.push_back("system: " + script.system);
  for (const auto& h : script.hypotheses) result.transcript.push_back("hyp: " + render(h));
  for (const auto& p : script.premises) result.transcript.push_back("premise: " + render(p));
  for (const auto& line : script.lines) {
    const bool checked = line.index <= result.verdict.tiers.size();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%3zu. ", line.index);
    std::string text = buf + render(line.formula);
    if (text.size() < 48) text.resize(48, ' ');
    text += "  " + render(line.justification);
    if (checked) text += "  [" + std::string(to_string(result.verdict.tiers[line.index - 1])) + "]";
    result.transcript.push_back(text);
    const auto kind = line.justification.kind;
    if (checked && kind != Kind::Hyp && kind != Kind::Premise && line.formula.is_modal()) {
      result.conclusions.push_back(line.formula);
    }
  }
  result.transcript.push_back(result.verdict.valid
                                  ? std::string("valid")
                                  : "invalid at line " + std::to_string(result.verdict.line) + ": " +
                                        result.verdict.reason);
  return result;
}

std::vector<std::string> scenario_names(const std::filesystem::path& fixtures_dir) {
  std::vector<std::string> out;
  const auto dir = fixtures_dir / "scenarios";
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".proof") out.push_back(e.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace deontic
