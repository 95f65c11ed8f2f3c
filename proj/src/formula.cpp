#include "deontic/formula.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <ostream>
#include <sstream>

namespace deontic {

struct Formula::Node {
  Connective connective;
  std::string name;
  std::vector<Formula> args;
  std::size_t size;
  int depth;
};

std::string_view modality_symbol(Modality m) {
  switch (m) {
    case Modality::Obligation: return "O";
    case Modality::StrongPermission: return "Ps";
    case Modality::WeakPermission: return "Pw";
  }
  return "?";
}

Formula Formula::make(Connective c, std::string name, std::vector<Formula> args) {
  std::size_t size = 1;
  int depth = 0;
  for (const auto& a : args) {
    size += a.size();
    depth = std::max(depth, a.modal_depth());
  }
  const bool modal = c == Connective::Obl || c == Connective::PermS || c == Connective::PermW;
  if (modal) ++depth;
  return Formula(std::make_shared<const Node>(
      Node{c, std::move(name), std::move(args), size, depth}));
}

Formula Formula::atom(std::string name) {
  if (!is_valid_atom_name(name)) {
    throw std::invalid_argument("invalid atom name '" + name + "'");
  }
  return make(Connective::Atom, std::move(name), {});
}
Formula Formula::top() { return make(Connective::Top, {}, {}); }
Formula Formula::bottom() { return make(Connective::Bottom, {}, {}); }
Formula Formula::negation(Formula f) { return make(Connective::Not, {}, {std::move(f)}); }
Formula Formula::conjunction(Formula l, Formula r) {
  return make(Connective::And, {}, {std::move(l), std::move(r)});
}
Formula Formula::disjunction(Formula l, Formula r) {
  return make(Connective::Or, {}, {std::move(l), std::move(r)});
}
Formula Formula::implication(Formula l, Formula r) {
  return make(Connective::Implies, {}, {std::move(l), std::move(r)});
}
Formula Formula::biconditional(Formula l, Formula r) {
  return make(Connective::Iff, {}, {std::move(l), std::move(r)});
}
Formula Formula::obligation(Formula f) { return make(Connective::Obl, {}, {std::move(f)}); }
Formula Formula::strong_permission(Formula f) {
  return make(Connective::PermS, {}, {std::move(f)});
}
Formula Formula::weak_permission(Formula f) {
  return make(Connective::PermW, {}, {std::move(f)});
}
Formula Formula::modal(Modality m, Formula f) {
  switch (m) {
    case Modality::Obligation: return obligation(std::move(f));
    case Modality::StrongPermission: return strong_permission(std::move(f));
    case Modality::WeakPermission: return weak_permission(std::move(f));
  }
  throw std::logic_error("bad modality");
}

Connective Formula::connective() const { return node_->connective; }

bool Formula::is_modal() const {
  const auto c = connective();
  return c == Connective::Obl || c == Connective::PermS || c == Connective::PermW;
}

bool Formula::is_binary() const { return node_->args.size() == 2; }
bool Formula::is_unary() const { return node_->args.size() == 1; }

const std::string& Formula::name() const { return node_->name; }

const Formula& Formula::operand() const {
  assert(is_unary());
  return node_->args[0];
}
const Formula& Formula::lhs() const {
  assert(is_binary());
  return node_->args[0];
}
const Formula& Formula::rhs() const {
  assert(is_binary());
  return node_->args[1];
}

Modality Formula::modality() const {
  switch (connective()) {
    case Connective::Obl: return Modality::Obligation;
    case Connective::PermS: return Modality::StrongPermission;
    case Connective::PermW: return Modality::WeakPermission;
    default: throw std::logic_error("modality() on a non-modal formula");
  }
}

std::size_t Formula::size() const { return node_->size; }
int Formula::modal_depth() const { return node_->depth; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->connective != b.node_->connective || a.node_->size != b.node_->size ||
      a.node_->name != b.node_->name) {
    return false;
  }
  return a.node_->args == b.node_->args;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->connective <=> b.node_->connective; c != 0) return c;
  if (auto c = a.node_->name <=> b.node_->name; c != 0) return c;
  const auto& x = a.node_->args;
  const auto& y = b.node_->args;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (auto c = x[i] <=> y[i]; c != 0) return c;
  }
  return x.size() <=> y.size();
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.is(Connective::Atom)) {
    out.insert(f.name());
  } else if (f.is_unary()) {
    collect_atoms(f.operand(), out);
  } else if (f.is_binary()) {
    collect_atoms(f.lhs(), out);
    collect_atoms(f.rhs(), out);
  }
}

}  // namespace

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

bool is_valid_atom_name(std::string_view name) {
  if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z')) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string describe_found(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return "end of input";
  return "'" + std::string(text.substr(pos, 1)) + "'";
}

std::string join_expected(const std::set<std::string>& expected) {
  std::string out;
  for (const auto& e : expected) {
    if (!out.empty()) out += ", ";
    out += e;
  }
  return out;
}

enum class Tok { End, Not, And, Or, Implies, Iff, LParen, RParen, Obl, PermS, PermW, Top, Bottom, Atom };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

const std::set<std::string>& unary_starts() {
  static const std::set<std::string> s = {"'~'", "'O'", "'Ps'", "'Pw'", "'T'", "'F'", "'('", "atom"};
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { lex(); }

  Formula parse_all() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) {
      fail({"'&'", "'|'", "'->'", "'<->'", "end of input"});
    }
    return f;
  }

 private:
  void lex() {
    std::size_t i = 0;
    while (i < text_.size()) {
      const char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      auto push = [&](Tok k, std::size_t len) {
        tokens_.push_back({k, start, std::string(text_.substr(start, len))});
        i += len;
      };
      if (c == '~') {
        push(Tok::Not, 1);
      } else if (c == '&') {
        push(Tok::And, 1);
      } else if (c == '|') {
        push(Tok::Or, 1);
      } else if (c == '(') {
        push(Tok::LParen, 1);
      } else if (c == ')') {
        push(Tok::RParen, 1);
      } else if (text_.substr(i, 2) == "->") {
        push(Tok::Implies, 2);
      } else if (text_.substr(i, 3) == "<->") {
        push(Tok::Iff, 3);
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) {
          ++j;
        }
        const std::string word(text_.substr(i, j - i));
        Tok kind;
        if (word == "O") {
          kind = Tok::Obl;
        } else if (word == "Ps") {
          kind = Tok::PermS;
        } else if (word == "Pw") {
          kind = Tok::PermW;
        } else if (word == "T") {
          kind = Tok::Top;
        } else if (word == "F") {
          kind = Tok::Bottom;
        } else if (is_valid_atom_name(word)) {
          kind = Tok::Atom;
        } else {
          throw ParseError(i, unary_starts(), "identifier '" + word + "'");
        }
        push(kind, j - i);
      } else {
        throw ParseError(i, {"formula token"}, describe_found(text_, i));
      }
    }
    tokens_.push_back({Tok::End, text_.size(), {}});
  }

  const Token& peek() const { return tokens_[cursor_]; }
  const Token& advance() { return tokens_[cursor_++]; }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.pos, std::move(expected), found);
  }

  Formula parse_iff() {
    Formula lhs = parse_impl();
    while (peek().kind == Tok::Iff) {
      advance();
      lhs = Formula::biconditional(std::move(lhs), parse_impl());
    }
    return lhs;
  }

  Formula parse_impl() {
    Formula lhs = parse_disj();
    if (peek().kind == Tok::Implies) {
      advance();
      return Formula::implication(std::move(lhs), parse_impl());
    }
    return lhs;
  }

  Formula parse_disj() {
    Formula lhs = parse_conj();
    while (peek().kind == Tok::Or) {
      advance();
      lhs = Formula::disjunction(std::move(lhs), parse_conj());
    }
    return lhs;
  }

  Formula parse_conj() {
    Formula lhs = parse_unary();
    while (peek().kind == Tok::And) {
      advance();
      lhs = Formula::conjunction(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Not: advance(); return Formula::negation(parse_unary());
      case Tok::Obl: advance(); return Formula::obligation(parse_unary());
      case Tok::PermS: advance(); return Formula::strong_permission(parse_unary());
      case Tok::PermW: advance(); return Formula::weak_permission(parse_unary());
      case Tok::Top: advance(); return Formula::top();
      case Tok::Bottom: advance(); return Formula::bottom();
      case Tok::Atom: return Formula::atom(advance().text);
      case Tok::LParen: {
        advance();
        Formula inner = parse_iff();
        if (peek().kind != Tok::RParen) fail({"')'", "'&'", "'|'", "'->'", "'<->'"});
        advance();
        return inner;
      }
      default: fail(unary_starts());
    }
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;
};

}  // namespace

ParseError::ParseError(std::size_t position, std::set<std::string> expected,
                       const std::string& found)
    : std::runtime_error("syntax error at position " + std::to_string(position) + ": found " +
                         found + ", expected one of " + join_expected(expected)),
      position_(position),
      expected_(std::move(expected)) {}

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

int precedence(const Formula& f) {
  switch (f.connective()) {
    case Connective::Iff: return 1;
    case Connective::Implies: return 2;
    case Connective::Or: return 3;
    case Connective::And: return 4;
    case Connective::Not:
    case Connective::Obl:
    case Connective::PermS:
    case Connective::PermW: return 5;
    default: return 6;
  }
}

std::string_view binary_symbol(Connective c) {
  switch (c) {
    case Connective::And: return " & ";
    case Connective::Or: return " | ";
    case Connective::Implies: return " -> ";
    case Connective::Iff: return " <-> ";
    default: return " ? ";
  }
}

void render_into(const Formula& f, std::string& out);

void render_child(const Formula& child, bool parens, std::string& out) {
  if (parens) out += '(';
  render_into(child, out);
  if (parens) out += ')';
}

void render_into(const Formula& f, std::string& out) {
  switch (f.connective()) {
    case Connective::Atom: out += f.name(); return;
    case Connective::Top: out += 'T'; return;
    case Connective::Bottom: out += 'F'; return;
    case Connective::Not:
      out += '~';
      render_child(f.operand(), precedence(f.operand()) < 5, out);
      return;
    case Connective::Obl:
    case Connective::PermS:
    case Connective::PermW: {
      out += modality_symbol(f.modality());
      const bool parens = precedence(f.operand()) < 5;
      if (!parens) out += ' ';
      render_child(f.operand(), parens, out);
      return;
    }
    default: break;
  }
  const int p = precedence(f);
  // Implication associates to the right, the other binaries to the left.
  const bool right_assoc = f.is(Connective::Implies);
  const bool lhs_parens = right_assoc ? precedence(f.lhs()) <= p : precedence(f.lhs()) < p;
  const bool rhs_parens = right_assoc ? precedence(f.rhs()) < p : precedence(f.rhs()) <= p;
  render_child(f.lhs(), lhs_parens, out);
  out += binary_symbol(f.connective());
  render_child(f.rhs(), rhs_parens, out);
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << render(f); }

Formula expand_pw(const Formula& f) {
  switch (f.connective()) {
    case Connective::Atom:
    case Connective::Top:
    case Connective::Bottom: return f;
    case Connective::PermW:
      return Formula::negation(
          Formula::obligation(Formula::negation(expand_pw(f.operand()))));
    case Connective::Not: return Formula::negation(expand_pw(f.operand()));
    case Connective::Obl: return Formula::obligation(expand_pw(f.operand()));
    case Connective::PermS: return Formula::strong_permission(expand_pw(f.operand()));
    case Connective::And: return Formula::conjunction(expand_pw(f.lhs()), expand_pw(f.rhs()));
    case Connective::Or: return Formula::disjunction(expand_pw(f.lhs()), expand_pw(f.rhs()));
    case Connective::Implies:
      return Formula::implication(expand_pw(f.lhs()), expand_pw(f.rhs()));
    case Connective::Iff:
      return Formula::biconditional(expand_pw(f.lhs()), expand_pw(f.rhs()));
  }
  return f;
}

std::vector<Formula> flatten(const Formula& f, Connective c) {
  if (!f.is(c)) return {f};
  auto out = flatten(f.lhs(), c);
  auto rest = flatten(f.rhs(), c);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace deontic
