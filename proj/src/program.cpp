#include "deontic/detail/program.hpp"

#include <stdexcept>

namespace deontic::detail {

Program::Program(const Formula& f, const LeafResolver& leaf) {
  code_.reserve(f.size());
  emit(f, leaf);
}

std::uint32_t Program::emit(const Formula& f, const LeafResolver& leaf) {
  if (const int slot = leaf(f); slot >= 0) {
    slot_count_ = std::max(slot_count_, static_cast<std::size_t>(slot) + 1);
    code_.push_back({OpCode::Slot, static_cast<std::uint32_t>(slot), 0});
    return static_cast<std::uint32_t>(code_.size() - 1);
  }
  Instr ins{};
  switch (f.connective()) {
    case Connective::Atom: throw std::logic_error("atom '" + f.name() + "' has no slot");
    case Connective::Top: ins.op = OpCode::Top; break;
    case Connective::Bottom: ins.op = OpCode::Bottom; break;
    case Connective::Not: ins = {OpCode::Not, emit(f.operand(), leaf)}; break;
    case Connective::Obl: ins = {OpCode::Obl, emit(f.operand(), leaf)}; break;
    case Connective::PermS: ins = {OpCode::PermS, emit(f.operand(), leaf)}; break;
    case Connective::PermW: ins = {OpCode::PermW, emit(f.operand(), leaf)}; break;
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
    case Connective::Iff: {
      const auto a = emit(f.lhs(), leaf);
      const auto b = emit(f.rhs(), leaf);
      const OpCode op = f.is(Connective::And)       ? OpCode::And
                        : f.is(Connective::Or)      ? OpCode::Or
                        : f.is(Connective::Implies) ? OpCode::Implies
                                                    : OpCode::Iff;
      ins = {op, a, b};
      break;
    }
  }
  if (ins.op == OpCode::Obl || ins.op == OpCode::PermS || ins.op == OpCode::PermW) {
    has_modal_ = true;
  }
  code_.push_back(ins);
  return static_cast<std::uint32_t>(code_.size() - 1);
}

std::uint64_t Program::run(std::span<const std::uint64_t> slots, std::uint64_t universe,
                           std::size_t lanes, const NeighbourhoodOracle* frame) const {
  scratch_.resize(code_.size());
  auto& v = scratch_;
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& ins = code_[i];
    std::uint64_t r = 0;
    switch (ins.op) {
      case OpCode::Slot: r = slots[ins.a]; break;
      case OpCode::Top: r = universe; break;
      case OpCode::Bottom: r = 0; break;
      case OpCode::Not: r = ~v[ins.a]; break;
      case OpCode::And: r = v[ins.a] & v[ins.b]; break;
      case OpCode::Or: r = v[ins.a] | v[ins.b]; break;
      case OpCode::Implies: r = ~v[ins.a] | v[ins.b]; break;
      case OpCode::Iff: r = ~(v[ins.a] ^ v[ins.b]); break;
      case OpCode::Obl:
      case OpCode::PermS:
      case OpCode::PermW: {
        const std::uint64_t arg = v[ins.a] & universe;
        for (std::size_t w = 0; w < lanes; ++w) {
          bool holds;
          if (ins.op == OpCode::Obl) {
            holds = frame->obligation_contains(w, arg);
          } else if (ins.op == OpCode::PermS) {
            holds = frame->permission_contains(w, arg);
          } else {
            holds = !frame->obligation_contains(w, universe & ~arg);
          }
          if (holds) r |= std::uint64_t{1} << w;
        }
        break;
      }
    }
    v[i] = r & universe;
  }
  return v.back();
}

}  // namespace deontic::detail
