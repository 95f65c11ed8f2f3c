#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace deontic {

enum class Connective {
  Atom,
  Top,
  Bottom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Obl,
  PermS,
  PermW,
};

/// The three deontic operators. Pw is kept distinct from ~O~ at the AST level.
enum class Modality { Obligation, StrongPermission, WeakPermission };

std::string_view modality_symbol(Modality m);

/// Immutable formula of the bimodal deontic language. Copies share structure.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula top();
  static Formula bottom();
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula biconditional(Formula lhs, Formula rhs);
  static Formula obligation(Formula f);
  static Formula strong_permission(Formula f);
  static Formula weak_permission(Formula f);
  static Formula modal(Modality m, Formula f);

  Connective connective() const;
  bool is(Connective c) const { return connective() == c; }
  bool is_modal() const;
  bool is_binary() const;
  bool is_unary() const;

  /// Atom name; empty for non-atoms.
  const std::string& name() const;
  /// Sole argument of a unary node.
  const Formula& operand() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  Modality modality() const;  // requires is_modal()

  std::size_t size() const;
  int modal_depth() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Connective c, std::string name, std::vector<Formula> args);

  std::shared_ptr<const Node> node_;
};

std::set<std::string> atoms(const Formula& f);

/// Thrown by parse(); carries the byte offset and the tokens that would
/// have been accepted there.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, std::set<std::string> expected,
             const std::string& found);

  std::size_t position() const { return position_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::set<std::string> expected_;
};

/// Precedence, loosest first: <->, -> (right-assoc), |, &, then the prefix
/// operators ~ O Ps Pw. Atoms match [a-z][a-z0-9_]*.
Formula parse(std::string_view text);

/// Minimal-parenthesis rendering; parse(render(f)) == f.
std::string render(const Formula& f);

bool is_valid_atom_name(std::string_view name);

/// Rewrites every Pw x as ~O~x, recursively.
Formula expand_pw(const Formula& f);

/// Flattens nested binary nodes of connective c into an ordered operand list.
std::vector<Formula> flatten(const Formula& f, Connective c);

std::ostream& operator<<(std::ostream& os, const Formula& f);

}  // namespace deontic
