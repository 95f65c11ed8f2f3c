#include "deontic/frames.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <vector>

#include "deontic/detail/frame_eval.hpp"

namespace deontic {

namespace {

constexpr std::string_view kNames[] = {
    "OSupplemented", "PSupplemented", "PwCoherent", "PsCoherent", "AFCPO",
    "AFCPP",         "AFCP2P",        "IFCPO",      "IFCPP",      "IFCP2P",
};

std::string fold(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '-') continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

// Visits every subset of `mask`, largest first, ending with the empty set.
template <typename F>
bool any_submask(std::uint64_t mask, F&& f) {
  for (std::uint64_t s = mask;; s = (s - 1) & mask) {
    if (f(s)) return true;
    if (s == 0) return false;
  }
}

// below[S] = some member Z of the family with Z ⊆ S (or -1).
std::vector<std::int64_t> subset_witness(std::size_t n, const std::vector<bool>& family) {
  const std::size_t total = std::size_t{1} << n;
  std::vector<std::int64_t> below(total, -1);
  for (std::size_t s = 0; s < total; ++s) {
    if (family[s]) below[s] = static_cast<std::int64_t>(s);
  }
  for (std::size_t bit = 0; bit < n; ++bit) {
    for (std::size_t s = 0; s < total; ++s) {
      if ((s >> bit) & 1 && below[s] < 0) below[s] = below[s & ~(std::size_t{1} << bit)];
    }
  }
  return below;
}

struct WorldView {
  const Frame& f;
  std::size_t w;
  std::uint64_t all;

  bool in_o(std::uint64_t s) const { return f.obligation[w].contains(WorldSet(s)); }
  bool in_p(std::uint64_t s) const { return f.permission[w].contains(WorldSet(s)); }
  // W - S not in N_O, i.e. Pw holds of S.
  bool weak(std::uint64_t s) const { return !in_o(all & ~s); }
};

std::optional<PropertyWitness> check_supplemented(const WorldView& v, const Neighbourhood& n) {
  for (const WorldSet s : n.members()) {
    for (std::size_t u = 0; u < v.f.world_count; ++u) {
      if (s.contains(u)) continue;
      WorldSet bigger = s;
      bigger.insert(u);
      if (!n.contains(bigger)) return PropertyWitness{v.w, bigger, s, {}, {}};
    }
  }
  return std::nullopt;
}

std::optional<PropertyWitness> check_at(const Frame& f, std::size_t w, FrameProperty p) {
  const WorldView v{f, w, f.universe().bits()};
  const std::size_t n = f.world_count;
  const std::size_t total = std::size_t{1} << n;
  std::optional<PropertyWitness> out;
  auto found = [&](std::uint64_t x, std::optional<std::uint64_t> y = {},
                   std::optional<std::uint64_t> z = {}, std::optional<std::uint64_t> q = {}) {
    auto as_set = [](std::optional<std::uint64_t> s) {
      return s ? std::optional<WorldSet>(WorldSet(*s)) : std::nullopt;
    };
    out = PropertyWitness{w, WorldSet(x), as_set(y), as_set(z), as_set(q)};
    return true;
  };

  switch (p) {
    case FrameProperty::OSupplemented: return check_supplemented(v, f.obligation[w]);
    case FrameProperty::PSupplemented: return check_supplemented(v, f.permission[w]);
    case FrameProperty::PwCoherent:
      for (const WorldSet x : f.obligation[w].members()) {
        if (v.in_o(v.all & ~x.bits())) return PropertyWitness{w, x, {}, {}, {}};
      }
      return std::nullopt;
    case FrameProperty::PsCoherent:
      for (const WorldSet x : f.permission[w].members()) {
        if (v.in_o(v.all & ~x.bits())) return PropertyWitness{w, x, {}, {}, {}};
      }
      return std::nullopt;
    default: break;
  }

  const auto permitted = f.permission[w].members();
  switch (p) {
    case FrameProperty::AFCPO:
      // X ∪ Y = U ∈ N_P, W-Y ∈ N_O, X ∉ N_P. Y ranges over [U-X, U].
      for (const WorldSet u : permitted) {
        const std::uint64_t um = u.bits();
        any_submask(um, [&](std::uint64_t x) {
          if (v.in_p(x)) return false;
          return any_submask(x, [&](std::uint64_t extra) {
            const std::uint64_t y = (um & ~x) | extra;
            return v.in_o(v.all & ~y) && found(x, y);
          });
        });
        if (out) return out;
      }
      return std::nullopt;
    case FrameProperty::AFCPP:
      // By symmetry the failing conjunct can be taken to be X's.
      for (const WorldSet u : permitted) {
        const std::uint64_t um = u.bits();
        any_submask(um, [&](std::uint64_t x) {
          if (v.in_p(x) || !v.weak(x)) return false;
          return any_submask(x, [&](std::uint64_t extra) {
            const std::uint64_t y = (um & ~x) | extra;
            return v.weak(y) && found(x, y);
          });
        });
        if (out) return out;
      }
      return std::nullopt;
    case FrameProperty::AFCP2P:
      for (const WorldSet u : permitted) {
        any_submask(u.bits(), [&](std::uint64_t x) {
          return !v.in_p(x) && v.weak(x) && found(x, u.bits());
        });
        if (out) return out;
      }
      return std::nullopt;
    case FrameProperty::IFCPO: {
      // Z ∈ N_O with Z ⊆ W-Y; the weakest Y for a given X is U-X.
      std::vector<bool> fam(total);
      for (const WorldSet z : f.obligation[w].members()) fam[z.bits()] = true;
      const auto below = subset_witness(n, fam);
      for (const WorldSet u : permitted) {
        const std::uint64_t um = u.bits();
        any_submask(um, [&](std::uint64_t x) {
          if (v.in_p(x)) return false;
          const std::uint64_t y = um & ~x;
          const auto z = below[v.all & ~y];
          return z >= 0 && found(x, y, static_cast<std::uint64_t>(z));
        });
        if (out) return out;
      }
      return std::nullopt;
    }
    case FrameProperty::IFCPP:
    case FrameProperty::IFCP2P: {
      // Z ⊆ X with W-Z ∉ N_O; Y = U and Q = Z complete an IFCPP witness.
      std::vector<bool> fam(total);
      for (std::size_t z = 0; z < total; ++z) fam[z] = v.weak(z);
      const auto below = subset_witness(n, fam);
      for (const WorldSet u : permitted) {
        any_submask(u.bits(), [&](std::uint64_t x) {
          if (v.in_p(x) || below[x] < 0) return false;
          const auto z = static_cast<std::uint64_t>(below[x]);
          if (p == FrameProperty::IFCPP) return found(x, u.bits(), z, z);
          return found(x, u.bits(), z);
        });
        if (out) return out;
      }
      return std::nullopt;
    }
    default: break;
  }
  throw std::logic_error("unhandled frame property");
}

}  // namespace

std::string_view to_string(FrameProperty p) { return kNames[static_cast<int>(p)]; }

std::optional<FrameProperty> parse_property(std::string_view name) {
  const std::string key = fold(name);
  for (const auto p : kAllProperties) {
    if (fold(to_string(p)) == key) return p;
  }
  return std::nullopt;
}

std::optional<PropertyWitness> check_property_at(const Frame& f, std::size_t world, FrameProperty p) {
  if (world >= f.world_count) throw std::out_of_range("world index out of range");
  return check_at(f, world, p);
}

PropertyResult check_property(const Frame& f, FrameProperty p) {
  for (std::size_t w = 0; w < f.world_count; ++w) {
    if (auto v = check_at(f, w, p)) return {p, std::move(v)};
  }
  return {p, std::nullopt};
}

PropertyResult check_property(const NeighbourhoodModel& m, FrameProperty p) {
  return check_property(m.frame(), p);
}

bool witness_violates(const Frame& f, FrameProperty p, const PropertyWitness& wit) {
  if (wit.world >= f.world_count) return false;
  const std::size_t w = wit.world;
  const WorldSet all = f.universe();
  auto in_o = [&](WorldSet s) { return f.obligation[w].contains(s); };
  auto in_p = [&](WorldSet s) { return f.permission[w].contains(s); };
  auto compl_ = [&](WorldSet s) { return all - s; };
  const WorldSet x = wit.x;
  if (!x.subset_of(all)) return false;
  const bool needs_y = p != FrameProperty::PwCoherent && p != FrameProperty::PsCoherent;
  if (needs_y && !wit.y) return false;
  const WorldSet y = wit.y.value_or(WorldSet{});
  switch (p) {
    case FrameProperty::OSupplemented: return in_o(x & y) && !(in_o(x) && in_o(y));
    case FrameProperty::PSupplemented: return in_p(x & y) && !(in_p(x) && in_p(y));
    case FrameProperty::PwCoherent: return in_o(x) && in_o(compl_(x));
    case FrameProperty::PsCoherent: return in_p(x) && in_o(compl_(x));
    case FrameProperty::AFCPO: return in_p(x | y) && in_o(compl_(y)) && !in_p(x);
    case FrameProperty::AFCPP:
      return in_p(x | y) && !in_o(compl_(x)) && !in_o(compl_(y)) && !(in_p(x) && in_p(y));
    case FrameProperty::AFCP2P: return in_p(x | y) && !in_o(compl_(x)) && !in_p(x);
    case FrameProperty::IFCPO:
      return wit.z && in_p(x | y) && wit.z->subset_of(compl_(y)) && in_o(*wit.z) && !in_p(x);
    case FrameProperty::IFCPP:
      return wit.z && wit.q && in_p(x | y) && wit.z->subset_of(x) && wit.q->subset_of(y) &&
             !in_o(compl_(*wit.z)) && !in_o(compl_(*wit.q)) && !(in_p(x) && in_p(y));
    case FrameProperty::IFCP2P:
      return wit.z && in_p(x | y) && wit.z->subset_of(x) && !in_o(compl_(*wit.z)) && !in_p(x);
  }
  return false;
}

std::set<FrameProperty> classify_frame(const Frame& f) {
  std::set<FrameProperty> out;
  for (const auto p : kAllProperties) {
    if (check_property(f, p).satisfied()) out.insert(p);
  }
  return out;
}

std::set<FrameProperty> classify_frame(const NeighbourhoodModel& m) { return classify_frame(m.frame()); }

Frame supplementation_closure(const Frame& f, Modality which) {
  if (which == Modality::WeakPermission) {
    throw std::invalid_argument("supplementation applies to O or Ps only");
  }
  Frame out = f;
  const std::size_t total = std::size_t{1} << f.world_count;
  auto& target = which == Modality::Obligation ? out.obligation : out.permission;
  for (auto& n : target) {
    std::vector<bool> fam(total);
    for (const WorldSet s : n.members()) fam[s.bits()] = true;
    const auto below = subset_witness(f.world_count, fam);
    for (std::size_t s = 0; s < total; ++s) {
      if (below[s] >= 0) n.insert(WorldSet(s));
    }
  }
  return out;
}

NeighbourhoodModel supplementation_closure(const NeighbourhoodModel& m, Modality which) {
  return NeighbourhoodModel(m.world_names(), supplementation_closure(m.frame(), which), m.valuation());
}

// ---------------------------------------------------------------------------

namespace {

// Odometer over (2^n)^k assignments; calls f(slots) until it returns true.
template <typename F>
bool any_assignment(std::size_t n, std::size_t k, F&& f) {
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::vector<std::uint64_t> slots(k, 0);
  while (true) {
    if (f(std::span<const std::uint64_t>(slots))) return true;
    std::size_t i = 0;
    while (i < k && ++slots[i] == limit) slots[i++] = 0;
    if (i == k) return false;
  }
}

SetAssignment to_assignment(const std::vector<std::string>& vars, std::span<const std::uint64_t> slots) {
  SetAssignment a;
  for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = WorldSet(slots[i]);
  return a;
}

std::vector<std::string> require_pure(const Formula& f, const std::set<std::string>& metas,
                                      const std::string& what) {
  for (const auto& a : atoms(f)) {
    if (!metas.contains(a)) {
      throw std::invalid_argument(what + " has concrete atom '" + a +
                                  "'; frame validity needs a pure schema");
    }
  }
  return {metas.begin(), metas.end()};
}

}  // namespace

FrameValidity schema_valid_on_frame(const Frame& f, const Schema& s) {
  const auto vars = require_pure(s.body, s.metavariables, "schema " + s.name);
  const detail::CompiledFormula body(s.body, vars);
  const WorldSet all = f.universe();
  FrameValidity result;
  any_assignment(f.world_count, vars.size(), [&](std::span<const std::uint64_t> slots) {
    const WorldSet t = body.run(f, slots);
    if (t == all) return false;
    result.counterexample = FrameCounterexample{
        to_assignment(vars, slots), static_cast<std::size_t>(std::countr_zero((all - t).bits()))};
    return true;
  });
  return result;
}

FrameValidity rule_valid_on_frame(const Frame& f, const RuleSchema& r) {
  std::set<std::string> used = atoms(r.premise);
  for (const auto& a : atoms(r.conclusion)) used.insert(a);
  for (const auto& side : r.side_conditions) {
    for (const auto& a : atoms(side)) used.insert(a);
  }
  for (const auto& a : used) {
    if (!r.metavariables.contains(a)) {
      throw std::invalid_argument("rule " + r.name + " has concrete atom '" + a + "'");
    }
  }
  const std::vector<std::string> vars(r.metavariables.begin(), r.metavariables.end());
  std::vector<detail::CompiledFormula> sides;
  for (const auto& side : r.side_conditions) sides.emplace_back(side, vars);
  const detail::CompiledFormula body(Formula::implication(r.premise, r.conclusion), vars);
  const WorldSet all = f.universe();
  FrameValidity result;
  any_assignment(f.world_count, vars.size(), [&](std::span<const std::uint64_t> slots) {
    for (const auto& side : sides) {
      if (side.run(f, slots) != all) return false;
    }
    const WorldSet t = body.run(f, slots);
    if (t == all) return false;
    result.counterexample = FrameCounterexample{
        to_assignment(vars, slots), static_cast<std::size_t>(std::countr_zero((all - t).bits()))};
    return true;
  });
  return result;
}

}  // namespace deontic
