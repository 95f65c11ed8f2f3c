#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "deontic/formula.hpp"

namespace deontic {

/// Largest world count a model may have. Neighbourhoods are stored as
/// bitsets over all 2^|W| subsets.
inline constexpr std::size_t kMaxWorlds = 16;

/// Exact finite set of world indices.
class WorldSet {
 public:
  constexpr WorldSet() = default;
  constexpr explicit WorldSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr WorldSet universe(std::size_t world_count) {
    return WorldSet(world_count >= 64 ? ~std::uint64_t{0}
                                      : (std::uint64_t{1} << world_count) - 1);
  }
  static constexpr WorldSet singleton(std::size_t w) { return WorldSet(std::uint64_t{1} << w); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(std::size_t w) const { return (bits_ >> w) & 1; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool subset_of(WorldSet other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr void insert(std::size_t w) { bits_ |= std::uint64_t{1} << w; }

  /// W - this, for the universe of `world_count` worlds.
  constexpr WorldSet complement(std::size_t world_count) const {
    return WorldSet(universe(world_count).bits_ & ~bits_);
  }

  friend constexpr WorldSet operator|(WorldSet a, WorldSet b) { return WorldSet(a.bits_ | b.bits_); }
  friend constexpr WorldSet operator&(WorldSet a, WorldSet b) { return WorldSet(a.bits_ & b.bits_); }
  friend constexpr WorldSet operator-(WorldSet a, WorldSet b) { return WorldSet(a.bits_ & ~b.bits_); }
  friend constexpr auto operator<=>(WorldSet, WorldSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// A collection of world sets, N(w), for one world of a frame with
/// `world_count` worlds.
class Neighbourhood {
 public:
  Neighbourhood() = default;
  explicit Neighbourhood(std::size_t world_count);

  std::size_t world_count() const { return world_count_; }
  bool contains(WorldSet s) const {
    const auto i = s.bits();
    return (words_[i >> 6] >> (i & 63)) & 1;
  }
  void insert(WorldSet s);
  void erase(WorldSet s);
  bool empty() const;
  std::size_t size() const;
  /// Members in ascending bit order.
  std::vector<WorldSet> members() const;

  /// Whole membership bitset as one word; only for world_count <= 6.
  std::uint64_t word() const { return words_.at(0); }
  void assign_word(std::uint64_t w) { words_.at(0) = w; }

  friend bool operator==(const Neighbourhood&, const Neighbourhood&) = default;

 private:
  std::size_t world_count_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Frame part <W, N_O, N_P> over worlds 0..world_count-1.
struct Frame {
  std::size_t world_count = 0;
  std::vector<Neighbourhood> obligation;
  std::vector<Neighbourhood> permission;

  static Frame empty(std::size_t world_count);

  WorldSet universe() const { return WorldSet::universe(world_count); }
  WorldSet complement(WorldSet s) const { return s.complement(world_count); }

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Raw model data as found in a model file; world names are unresolved.
struct ModelDescription {
  std::vector<std::string> worlds;
  std::map<std::string, std::vector<std::string>> valuation;
  std::map<std::string, std::vector<std::vector<std::string>>> obligation;
  std::map<std::string, std::vector<std::vector<std::string>>> permission;
};

/// Every violated model invariant, each naming the offending world, set or
/// atom. Empty means the description is a well-formed model.
std::vector<std::string> validate_model(const ModelDescription& m);

class ModelError : public std::runtime_error {
 public:
  explicit ModelError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class NeighbourhoodModel {
 public:
  NeighbourhoodModel(std::vector<std::string> world_names, Frame frame,
                     std::map<std::string, WorldSet> valuation);

  /// Throws ModelError when validate_model reports violations.
  static NeighbourhoodModel from_description(const ModelDescription& m);

  const Frame& frame() const { return frame_; }
  Frame& frame() { return frame_; }
  std::size_t world_count() const { return frame_.world_count; }
  const std::vector<std::string>& world_names() const { return world_names_; }
  const std::string& world_name(std::size_t w) const { return world_names_.at(w); }
  /// Throws std::out_of_range for unknown worlds.
  std::size_t world_index(std::string_view name) const;

  /// V(atom); atoms absent from the valuation have the empty truth set.
  WorldSet valuation(const std::string& atom) const;
  const std::map<std::string, WorldSet>& valuation() const { return valuation_; }
  void set_valuation(const std::string& atom, WorldSet s);

  std::string render_set(WorldSet s) const;
  ModelDescription describe() const;

 private:
  std::vector<std::string> world_names_;
  Frame frame_;
  std::map<std::string, WorldSet> valuation_;
};

/// Names worlds w1..wn.
std::vector<std::string> default_world_names(std::size_t n);

using Valuation = std::map<std::string, WorldSet>;

/// Truth set of `f` on `frame` under `valuation` (missing atoms are empty).
WorldSet truth_set(const Frame& frame, const Formula& f, const Valuation& valuation);

WorldSet truth_set(const NeighbourhoodModel& m, const Formula& f);
bool eval(const NeighbourhoodModel& m, std::size_t world, const Formula& f);
bool eval(const NeighbourhoodModel& m, std::string_view world, const Formula& f);
/// True at every world.
bool model_valid(const NeighbourhoodModel& m, const Formula& f);

}  // namespace deontic
