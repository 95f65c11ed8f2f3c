#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "deontic/frames.hpp"
#include "deontic/proof.hpp"
#include "deontic/systems.hpp"

namespace deontic {

/// A model offered as a strictness witness for smaller ⊂ larger.
struct SeparatorCheck {
  std::string fixture;
  std::set<FrameProperty> missing;          // required by the smaller system's class
  std::optional<std::string> falsified;     // principle of the larger system not frame-valid
  std::string error;                        // fixture could not be loaded
  bool verified() const { return error.empty() && missing.empty() && falsified.has_value(); }
};

struct DerivationCheck {
  std::string system;
  std::string principle;
  std::filesystem::path script;
  ProofVerdict verdict;
};

struct InclusionFact {
  std::string smaller;
  std::string larger;
  /// Principles of the smaller system derived in the larger one.
  std::vector<DerivationCheck> evidence;
  std::optional<SeparatorCheck> printed_fixture;
  std::optional<SeparatorCheck> separator;
  /// Principles of the larger system derived in the smaller one; when all
  /// verify the two systems coincide.
  std::vector<DerivationCheck> converse;
  bool antitone = false;

  bool included() const;
  bool collapses() const;
  bool strict() const;
};

struct PropertyImplication {
  std::set<FrameProperty> premises;
  FrameProperty conclusion;
};

/// Implications between frame properties that hold on every frame; the test
/// suite checks each one on random frames.
const std::vector<PropertyImplication>& property_implications();

/// Closes a property set under property_implications().
std::set<FrameProperty> property_closure(std::set<FrameProperty> props);

/// The seven inclusions FCP2⊂FCP1⊂FCP3⊂FCP6, FCP2⊂FCP4⊂FCP5⊂FCP6, FCP1⊂FCP5.
std::vector<InclusionFact> inclusion_report(const SystemRegistry& registry,
                                            const std::filesystem::path& fixtures_dir);

SeparatorCheck check_separator(const std::filesystem::path& model_path, const SystemRegistry& registry,
                               std::string_view smaller, std::string_view larger);

}  // namespace deontic
