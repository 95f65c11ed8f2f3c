#pragma once

// Flattened, bit-parallel form of a formula. Each instruction yields a 64-bit
// lane mask: one bit per world when evaluating on a frame, one bit per truth
// assignment when deciding tautologies.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "deontic/formula.hpp"

namespace deontic::detail {

enum class OpCode : std::uint8_t { Slot, Top, Bottom, Not, And, Or, Implies, Iff, Obl, PermS, PermW };

struct Instr {
  OpCode op;
  std::uint32_t a = 0;  // slot index, or operand instruction
  std::uint32_t b = 0;
};

/// Membership test "set in N(w)" for the modal instructions.
class NeighbourhoodOracle {
 public:
  virtual ~NeighbourhoodOracle() = default;
  virtual bool obligation_contains(std::size_t world, std::uint64_t set) const = 0;
  virtual bool permission_contains(std::size_t world, std::uint64_t set) const = 0;
};

class Program {
 public:
  /// `leaf` maps a subformula to a slot index, or returns -1 to have it
  /// compiled structurally. Atoms must always be given a slot.
  using LeafResolver = std::function<int(const Formula&)>;

  Program() = default;
  Program(const Formula& f, const LeafResolver& leaf);

  /// Evaluates over the lanes in `universe`. `frame` may be null if the
  /// program has no modal instructions.
  std::uint64_t run(std::span<const std::uint64_t> slots, std::uint64_t universe,
                    std::size_t lanes, const NeighbourhoodOracle* frame) const;

  bool has_modal() const { return has_modal_; }
  std::size_t slot_count() const { return slot_count_; }

 private:
  std::uint32_t emit(const Formula& f, const LeafResolver& leaf);

  std::vector<Instr> code_;
  std::size_t slot_count_ = 0;
  bool has_modal_ = false;
  mutable std::vector<std::uint64_t> scratch_;
};

}  // namespace deontic::detail
