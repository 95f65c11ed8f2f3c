#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deontic/formula.hpp"
#include "deontic/schema.hpp"
#include "deontic/systems.hpp"

namespace deontic {

enum class Tier { Theorem, Local };
std::string_view to_string(Tier t);

/// An axiom instance cited inline by a cpl line, e.g. `FCP[p := a, q := b]`.
struct AxiomCitation {
  std::string name;
  Substitution sigma;
};

struct Justification {
  enum class Kind { Hyp, Premise, Taut, Axiom, MP, CPL, RE, RM, IFCPO, IFCPP, IFCP2P };

  Kind kind = Kind::Hyp;
  /// MP, CPL, RE, RM: cited lines. IFCP*: main premise lines (empty for the
  /// implication form).
  std::vector<std::size_t> cites;
  /// Axiom: schema name and optional substitution.
  std::optional<AxiomCitation> axiom;
  bool axiom_has_sigma = false;
  /// CPL: axiom instances used besides the cited lines.
  std::vector<AxiomCitation> inline_axioms;
  /// RE, RM.
  std::optional<Modality> modality;
  /// IFCP*: theorem-tier side lines; nullopt means the side condition must
  /// itself be a tautology.
  std::vector<std::optional<std::size_t>> sides;
};

std::string render(const Justification& j);

struct ProofLine {
  std::size_t index = 0;
  Formula formula;
  Justification justification;
};

struct ProofScript {
  std::string system;
  std::vector<Formula> hypotheses;  // local tier
  std::vector<Formula> premises;    // theorem tier, e.g. side conditions of a derived rule
  std::optional<Formula> goal;
  std::vector<ProofLine> lines;
};

class ProofParseError : public std::runtime_error {
 public:
  ProofParseError(std::size_t source_line, const std::string& message);
  std::size_t source_line() const { return source_line_; }

 private:
  std::size_t source_line_;
};

/// Text format:
///   system: NAME
///   hyp: FORMULA        (any number)
///   premise: FORMULA    (any number)
///   goal: FORMULA
///   N. FORMULA ; JUSTIFICATION
/// '#' starts a comment. Lines must be numbered 1, 2, 3, ...
ProofScript parse_proof_script(std::string_view text);
ProofScript load_proof_script(const std::filesystem::path& path);

struct ProofVerdict {
  bool valid = false;
  std::size_t line = 0;  // first failing line; 0 for script-level failures
  std::string reason;
  std::vector<Tier> tiers;  // tiers of the lines checked so far
};

struct CheckOptions {
  /// Root holding table1/<SYSTEM>/<NAME>.proof; `ax` may cite a derivable
  /// schema of the system when its script there verifies.
  std::filesystem::path fixtures_dir;
};

ProofVerdict check_proof(const ProofScript& script, const SystemRegistry& registry,
                         const CheckOptions& options = {});

/// Checks that the script derives the named schema or rule in the system:
/// a schema outright, a rule from its premise with its side conditions as
/// premises.
ProofVerdict verify_derivation(const std::filesystem::path& script, std::string_view system,
                               std::string_view principle, const SystemRegistry& registry,
                               const std::filesystem::path& fixtures_dir);

struct Table1Entry {
  std::string name;
  std::filesystem::path script;
  ProofVerdict verdict;
};

struct Table1Report {
  std::string system;
  std::vector<Table1Entry> entries;
  std::vector<std::string> unresolved;  // listed in Table 1 but not checkable
  bool all_valid() const;
};

/// Runs verify_derivation on table1/<SYSTEM>/<NAME>.proof for every
/// derivable entry. A missing script is an invalid entry.
Table1Report verify_table1(std::string_view system, const SystemRegistry& registry,
                           const std::filesystem::path& fixtures_dir);

struct ScenarioResult {
  std::string name;
  ProofVerdict verdict;
  std::vector<std::string> transcript;
  /// Deontic formulas derived (not assumed) by the script, in order.
  std::vector<Formula> conclusions;
};

/// Replays scenarios/<name>.proof.
ScenarioResult run_scenario(std::string_view name, const SystemRegistry& registry,
                            const std::filesystem::path& fixtures_dir);

/// Checks a script and renders one transcript line per proof line.
ScenarioResult replay_script(std::string name, const ProofScript& script, const SystemRegistry& registry,
                             const std::filesystem::path& fixtures_dir);

std::vector<std::string> scenario_names(const std::filesystem::path& fixtures_dir);

}  // namespace deontic
