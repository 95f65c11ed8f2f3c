#pragma once

#include <span>

#include "deontic/formula.hpp"

namespace deontic {

/// Classical tautology check in which every maximal modal subformula
/// (O x, Ps x, Pw x) is an opaque propositional atom; syntactically equal
/// modal subformulas share the atom. Decided by bit-sliced truth table.
bool is_tautology(const Formula& f);

/// is_tautology((P1 & ... & Pn) -> conclusion) under the same abstraction.
bool tautological_consequence(std::span<const Formula> premises, const Formula& conclusion);

}  // namespace deontic
