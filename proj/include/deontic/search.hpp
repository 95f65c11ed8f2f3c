#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "deontic/frames.hpp"
#include "deontic/model.hpp"
#include "deontic/schema.hpp"

namespace deontic {

struct SearchBounds {
  std::size_t max_worlds = 3;
  std::size_t max_sets = 2;  // per neighbourhood N_O(w), N_P(w)
  std::vector<std::string> atoms;
  std::size_t hard_cap = 5;
  std::optional<std::chrono::milliseconds> timeout;
};

/// A formula is falsified by a model and world; a schema or rule by a frame,
/// an assignment of subsets to its metavariables, and a world.
using SearchTarget = std::variant<Formula, Schema, RuleSchema>;

struct SearchStats {
  std::uint64_t models_examined = 0;  // candidates after isomorphism pruning
  std::uint64_t pruned_by_property = 0;
  std::uint64_t pruned_by_isomorphism = 0;
  std::chrono::milliseconds elapsed{0};
};

enum class SearchMode {
  Propositional,  // no modal operators: neighbourhoods stay empty
  SingleWorld,    // only w1 carries neighbourhoods
  Full,
};
std::string_view to_string(SearchMode m);

struct CountermodelReport {
  enum class Outcome { Found, Exhausted, TimedOut };
  Outcome outcome = Outcome::Exhausted;
  /// For schema and rule targets the valuation maps each metavariable to
  /// its assigned truth set, so the target body can be evaluated directly.
  std::optional<NeighbourhoodModel> model;
  std::size_t world = 0;
  SearchMode mode = SearchMode::Full;
  SearchStats stats;
};
std::string_view to_string(CountermodelReport::Outcome o);

/// Enumerates models with 1..max_worlds worlds, each neighbourhood holding at
/// most max_sets subsets (or, for a required supplementation, the superset
/// closure of at most max_sets generators), keeps those with every required
/// property and returns the first that falsifies the target.
/// Throws std::invalid_argument when bounds exceed the caps or a formula
/// target uses atoms missing from bounds.atoms.
CountermodelReport find_countermodel(const SearchTarget& target, const std::set<FrameProperty>& required,
                                     const SearchBounds& bounds);

/// Re-checks a Found report: target false at the world, properties hold.
bool reverify(const CountermodelReport& report, const SearchTarget& target,
              const std::set<FrameProperty>& required);

/// Name of an axiom or rule, or formula text.
SearchTarget parse_target(std::string_view text);

// ---------------------------------------------------------------------------

struct Elimination {
  Formula disjunct;
  Formula obligation;
};

struct RemainderOptions {
  /// Also eliminate d by any O r with r -> ~d a tautology.
  bool ifcp_elimination = false;
  /// Lift survivors with AFCP2_P (needs only Pw d) instead of AFCP_P.
  bool lift_afcp2 = false;
};

struct RemainderResult {
  std::vector<Formula> surviving;  // in input order
  std::vector<Formula> detached;   // Ps d
  std::vector<Elimination> eliminated;
  /// Ps of the disjunction of the survivors.
  Formula remainder() const;
};

/// Throws std::invalid_argument if the list is empty and std::domain_error
/// if every disjunct is eliminated.
RemainderResult compute_remainder(const std::vector<Formula>& disjuncts, const std::vector<Formula>& theory,
                                  const RemainderOptions& options = {});

/// One formula per line; '#' starts a comment.
std::vector<Formula> parse_theory(std::string_view text);

}  // namespace deontic
