#include "deontic/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "deontic/detail/frame_eval.hpp"

namespace deontic {

Neighbourhood::Neighbourhood(std::size_t world_count)
    : world_count_(world_count), words_(((std::size_t{1} << world_count) + 63) / 64, 0) {}

void Neighbourhood::insert(WorldSet s) {
  const auto i = s.bits();
  words_[i >> 6] |= std::uint64_t{1} << (i & 63);
}

void Neighbourhood::erase(WorldSet s) {
  const auto i = s.bits();
  words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

bool Neighbourhood::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t Neighbourhood::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<WorldSet> Neighbourhood::members() const {
  std::vector<WorldSet> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      const int bit = std::countr_zero(w);
      out.emplace_back((i << 6) | static_cast<std::uint64_t>(bit));
      w &= w - 1;
    }
  }
  return out;
}

Frame Frame::empty(std::size_t world_count) {
  Frame f;
  f.world_count = world_count;
  f.obligation.assign(world_count, Neighbourhood(world_count));
  f.permission.assign(world_count, Neighbourhood(world_count));
  return f;
}

std::vector<std::string> default_world_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::string> validate_model(const ModelDescription& m) {
  std::vector<std::string> out;
  if (m.worlds.empty()) out.push_back("W is empty");
  if (m.worlds.size() > kMaxWorlds) {
    out.push_back("W has " + std::to_string(m.worlds.size()) + " worlds; at most " +
                  std::to_string(kMaxWorlds) + " are supported");
  }
  std::set<std::string> declared;
  for (const auto& w : m.worlds) {
    if (w.empty()) out.push_back("world identifier is empty");
    if (!declared.insert(w).second) out.push_back("world '" + w + "' declared twice");
  }
  for (const auto& [atom, worlds] : m.valuation) {
    if (!is_valid_atom_name(atom)) out.push_back("valuation: '" + atom + "' is not a valid atom name");
    for (const auto& w : worlds) {
      if (!declared.contains(w)) {
        out.push_back("valuation of '" + atom + "': world '" + w + "' outside W");
      }
    }
  }
  auto check_neighbourhoods = [&](const auto& n, const std::string& label) {
    for (const auto& [world, sets] : n) {
      if (!declared.contains(world)) {
        out.push_back(label + ": neighbourhood declared for world '" + world + "' outside W");
      }
      for (const auto& set : sets) {
        for (const auto& member : set) {
          if (!declared.contains(member)) {
            out.push_back(label + "(" + world + "): set member '" + member + "' outside W");
          }
        }
      }
    }
  };
  check_neighbourhoods(m.obligation, "N_O");
  check_neighbourhoods(m.permission, "N_P");
  return out;
}

namespace {

std::string join_lines(const std::vector<std::string>& v) {
  std::string out = "invalid model:";
  for (const auto& s : v) out += "\n  " + s;
  return out;
}

}  // namespace

ModelError::ModelError(std::vector<std::string> violations)
    : std::runtime_error(join_lines(violations)), violations_(std::move(violations)) {}

NeighbourhoodModel::NeighbourhoodModel(std::vector<std::string> world_names, Frame frame,
                                       std::map<std::string, WorldSet> valuation)
    : world_names_(std::move(world_names)),
      frame_(std::move(frame)),
      valuation_(std::move(valuation)) {
  if (world_names_.size() != frame_.world_count) {
    throw std::invalid_argument("world name count does not match the frame");
  }
}

NeighbourhoodModel NeighbourhoodModel::from_description(const ModelDescription& m) {
  if (auto v = validate_model(m); !v.empty()) throw ModelError(std::move(v));
  const std::size_t n = m.worlds.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[m.worlds[i]] = i;
  auto to_set = [&](const std::vector<std::string>& names) {
    WorldSet s;
    for (const auto& w : names) s.insert(index.at(w));
    return s;
  };
  Frame frame = Frame::empty(n);
  for (const auto& [w, sets] : m.obligation) {
    for (const auto& s : sets) frame.obligation[index.at(w)].insert(to_set(s));
  }
  for (const auto& [w, sets] : m.permission) {
    for (const auto& s : sets) frame.permission[index.at(w)].insert(to_set(s));
  }
  std::map<std::string, WorldSet> valuation;
  for (const auto& [atom, worlds] : m.valuation) valuation[atom] = to_set(worlds);
  return NeighbourhoodModel(m.worlds, std::move(frame), std::move(valuation));
}

std::size_t NeighbourhoodModel::world_index(std::string_view name) const {
  const auto it = std::find(world_names_.begin(), world_names_.end(), name);
  if (it == world_names_.end()) throw std::out_of_range("unknown world '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - world_names_.begin());
}

WorldSet NeighbourhoodModel::valuation(const std::string& atom) const {
  const auto it = valuation_.find(atom);
  return it == valuation_.end() ? WorldSet{} : it->second;
}

void NeighbourhoodModel::set_valuation(const std::string& atom, WorldSet s) {
  valuation_[atom] = s & frame_.universe();
}

std::string NeighbourhoodModel::render_set(WorldSet s) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t w = 0; w < world_count(); ++w) {
    if (!s.contains(w)) continue;
    if (!first) out += ",";
    first = false;
    out += world_names_[w];
  }
  return out + "}";
}

ModelDescription NeighbourhoodModel::describe() const {
  ModelDescription d;
  d.worlds = world_names_;
  auto names = [&](WorldSet s) {
    std::vector<std::string> out;
    for (std::size_t w = 0; w < world_count(); ++w) {
      if (s.contains(w)) out.push_back(world_names_[w]);
    }
    return out;
  };
  for (const auto& [atom, s] : valuation_) d.valuation[atom] = names(s);
  for (std::size_t w = 0; w < world_count(); ++w) {
    for (const auto& s : frame_.obligation[w].members()) d.obligation[world_names_[w]].push_back(names(s));
    for (const auto& s : frame_.permission[w].members()) d.permission[world_names_[w]].push_back(names(s));
  }
  return d;
}

// ---------------------------------------------------------------------------

namespace detail {

CompiledFormula::CompiledFormula(const Formula& f) : CompiledFormula(f, [&] {
  const auto as = deontic::atoms(f);
  return std::vector<std::string>(as.begin(), as.end());
}()) {}

CompiledFormula::CompiledFormula(const Formula& f, const std::vector<std::string>& atom_order)
    : atoms(atom_order) {
  program = Program(f, [this](const Formula& g) -> int {
    if (!g.is(Connective::Atom)) return -1;
    const auto it = std::find(atoms.begin(), atoms.end(), g.name());
    if (it == atoms.end()) throw std::logic_error("atom '" + g.name() + "' missing from atom order");
    return static_cast<int>(it - atoms.begin());
  });
}

}  // namespace detail

WorldSet truth_set(const Frame& frame, const Formula& f, const Valuation& valuation) {
  const detail::CompiledFormula compiled(f);
  std::vector<std::uint64_t> slots;
  for (const auto& a : compiled.atoms) {
    const auto it = valuation.find(a);
    slots.push_back(it == valuation.end() ? 0 : it->second.bits());
  }
  return compiled.run(frame, slots);
}

WorldSet truth_set(const NeighbourhoodModel& m, const Formula& f) {
  return truth_set(m.frame(), f, m.valuation());
}

bool eval(const NeighbourhoodModel& m, std::size_t world, const Formula& f) {
  if (world >= m.world_count()) throw std::out_of_range("unknown world index");
  return truth_set(m, f).contains(world);
}

bool eval(const NeighbourhoodModel& m, std::string_view world, const Formula& f) {
  return eval(m, m.world_index(world), f);
}

bool model_valid(const NeighbourhoodModel& m, const Formula& f) {
  return truth_set(m, f) == m.frame().universe();
}

}  // namespace deontic
