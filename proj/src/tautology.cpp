#include "deontic/tautology.hpp"

#include <map>
#include <vector>

#include "deontic/detail/program.hpp"

namespace deontic {

namespace {

// Lane patterns for the low six variables of a 64-assignment chunk.
constexpr std::uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

}  // namespace

bool is_tautology(const Formula& f) {
  std::map<Formula, int> slots;
  auto leaf = [&slots](const Formula& g) -> int {
    if (g.is(Connective::Atom) || g.is_modal()) {
      return slots.try_emplace(g, static_cast<int>(slots.size())).first->second;
    }
    return -1;
  };
  const detail::Program program(f, leaf);
  const std::size_t vars = slots.size();

  const std::size_t low = std::min<std::size_t>(vars, 6);
  const std::size_t lanes = std::size_t{1} << low;
  const std::uint64_t universe = lanes == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lanes) - 1;
  const std::uint64_t chunks = vars > 6 ? std::uint64_t{1} << (vars - 6) : 1;

  std::vector<std::uint64_t> values(vars);
  for (std::size_t i = 0; i < low; ++i) values[i] = kLanePattern[i];
  for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) {
    for (std::size_t i = 6; i < vars; ++i) {
      values[i] = (chunk >> (i - 6)) & 1 ? ~std::uint64_t{0} : 0;
    }
    if (program.run(values, universe, lanes, nullptr) != universe) return false;
  }
  return true;
}

bool tautological_consequence(std::span<const Formula> premises, const Formula& conclusion) {
  if (premises.empty()) return is_tautology(conclusion);
  Formula antecedent = premises.front();
  for (std::size_t i = 1; i < premises.size(); ++i) {
    antecedent = Formula::conjunction(std::move(antecedent), premises[i]);
  }
  return is_tautology(Formula::implication(std::move(antecedent), conclusion));
}

}  // namespace deontic
