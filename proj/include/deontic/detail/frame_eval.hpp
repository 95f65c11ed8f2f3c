#pragma once

#include "deontic/detail/program.hpp"
#include "deontic/model.hpp"

namespace deontic::detail {

class FrameOracle final : public NeighbourhoodOracle {
 public:
  explicit FrameOracle(const Frame& frame) : frame_(frame) {}
  bool obligation_contains(std::size_t w, std::uint64_t set) const override {
    return frame_.obligation[w].contains(WorldSet(set));
  }
  bool permission_contains(std::size_t w, std::uint64_t set) const override {
    return frame_.permission[w].contains(WorldSet(set));
  }

 private:
  const Frame& frame_;
};

/// A formula compiled against a fixed list of atom names; slot i holds the
/// truth set of atoms[i].
struct CompiledFormula {
  std::vector<std::string> atoms;
  Program program;

  explicit CompiledFormula(const Formula& f);
  CompiledFormula(const Formula& f, const std::vector<std::string>& atom_order);

  WorldSet run(const Frame& frame, std::span<const std::uint64_t> slots) const {
    const FrameOracle oracle(frame);
    return WorldSet(program.run(slots, frame.universe().bits(), frame.world_count, &oracle));
  }
};

}  // namespace deontic::detail
