#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "deontic/model.hpp"
#include "deontic/schema.hpp"

namespace deontic {

enum class FrameProperty {
  OSupplemented,
  PSupplemented,
  PwCoherent,
  PsCoherent,
  AFCPO,
  AFCPP,
  AFCP2P,
  IFCPO,
  IFCPP,
  IFCP2P,
};

inline constexpr std::array<FrameProperty, 10> kAllProperties = {
    FrameProperty::OSupplemented, FrameProperty::PSupplemented, FrameProperty::PwCoherent,
    FrameProperty::PsCoherent,    FrameProperty::AFCPO,         FrameProperty::AFCPP,
    FrameProperty::AFCP2P,        FrameProperty::IFCPO,         FrameProperty::IFCPP,
    FrameProperty::IFCP2P,
};

std::string_view to_string(FrameProperty p);
/// Case-insensitive; '_' and '-' are ignored, so "AFCP_O" and "afcpo" both work.
std::optional<FrameProperty> parse_property(std::string_view name);

/// Sets exhibiting a violation at `world`. Which of y, z, q are present
/// depends on the property:
///   supplementation  x, y      X∩Y ∈ N, but X ∉ N or Y ∉ N
///   coherence        x         X ∈ N, W-X ∈ N_O
///   AFCP*            x, y
///   IFCPO, IFCP2P    x, y, z
///   IFCPP            x, y, z, q
struct PropertyWitness {
  std::size_t world = 0;
  WorldSet x;
  std::optional<WorldSet> y, z, q;
};

struct PropertyResult {
  FrameProperty property;
  std::optional<PropertyWitness> violation;
  bool satisfied() const { return !violation.has_value(); }
};

PropertyResult check_property(const Frame& f, FrameProperty p);
PropertyResult check_property(const NeighbourhoodModel& m, FrameProperty p);
/// Checks the condition at one world only.
std::optional<PropertyWitness> check_property_at(const Frame& f, std::size_t world, FrameProperty p);

/// Substitutes the witness into the property's condition: true iff the
/// antecedent holds and the consequent fails.
bool witness_violates(const Frame& f, FrameProperty p, const PropertyWitness& w);

std::set<FrameProperty> classify_frame(const Frame& f);
std::set<FrameProperty> classify_frame(const NeighbourhoodModel& m);

/// Closes every N(w) of the chosen modality (O or Ps) under supersets.
Frame supplementation_closure(const Frame& f, Modality which);
NeighbourhoodModel supplementation_closure(const NeighbourhoodModel& m, Modality which);

using SetAssignment = std::map<std::string, WorldSet>;

struct FrameCounterexample {
  SetAssignment assignment;  // metavariable -> truth set
  std::size_t world = 0;
};

struct FrameValidity {
  std::optional<FrameCounterexample> counterexample;
  bool valid() const { return !counterexample.has_value(); }
};

/// Frame validity of a pure schema: every metavariable ranges over every
/// subset of W. Cost is 2^(|W| * #metavariables) evaluations.
/// Throws std::invalid_argument for schemas with concrete atoms.
FrameValidity schema_valid_on_frame(const Frame& f, const Schema& s);

/// Pointwise rule validity: for every assignment under which each side
/// condition is true at all worlds, premise -> conclusion holds at every
/// world. The counterexample world has the premise true and conclusion false.
FrameValidity rule_valid_on_frame(const Frame& f, const RuleSchema& r);

}  // namespace deontic
