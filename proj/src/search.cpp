#include "deontic/search.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "deontic/detail/frame_eval.hpp"
#include "deontic/systems.hpp"
#include "deontic/tautology.hpp"

namespace deontic {

std::string_view to_string(SearchMode m) {
  switch (m) {
    case SearchMode::Propositional: return "propositional";
    case SearchMode::SingleWorld: return "single-world";
    case SearchMode::Full: return "full";
  }
  return "?";
}

std::string_view to_string(CountermodelReport::Outcome o) {
  switch (o) {
    case CountermodelReport::Outcome::Found: return "found";
    case CountermodelReport::Outcome::Exhausted: return "exhausted";
    case CountermodelReport::Outcome::TimedOut: return "timed-out";
  }
  return "?";
}

namespace {

constexpr std::size_t kSearchWorldLimit = 6;  // a neighbourhood fits one word
constexpr std::size_t kPruneLimit = 4;

using Clock = std::chrono::steady_clock;

// Collections of at most m subsets of an n-world universe, as membership
// words, in lexicographic order of their sorted subset lists. With `closed`,
// the superset closures of antichains of at most m generators instead.
std::vector<std::uint64_t> collections(std::size_t n, std::size_t m, bool closed) {
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::vector<std::uint64_t> out;
  std::vector<std::uint64_t> prefix;
  auto close = [&](const std::vector<std::uint64_t>& gens) {
    std::uint64_t word = 0;
    for (std::uint64_t s = 0; s < subsets; ++s) {
      for (auto g : gens) {
        if ((g & ~s) == 0) {
          word |= std::uint64_t{1} << s;
          break;
        }
      }
    }
    return word;
  };
  auto rec = [&](auto&& self, std::uint64_t start) -> void {
    if (closed) {
      out.push_back(close(prefix));
    } else {
      std::uint64_t word = 0;
      for (auto s : prefix) word |= std::uint64_t{1} << s;
      out.push_back(word);
    }
    if (prefix.size() == m) return;
    for (std::uint64_t s = start; s < subsets; ++s) {
      if (closed && std::any_of(prefix.begin(), prefix.end(),
                                [&](std::uint64_t g) { return (g & ~s) == 0 || (s & ~g) == 0; })) {
        continue;
      }
      prefix.push_back(s);
      self(self, s + 1);
      prefix.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

struct Permutation {
  std::vector<std::size_t> image;        // world -> world
  std::vector<std::uint64_t> set_image;  // subset bits -> subset bits

  std::uint64_t apply_collection(std::uint64_t word) const {
    std::uint64_t out = 0;
    while (word != 0) {
      const int s = std::countr_zero(word);
      out |= std::uint64_t{1} << set_image[static_cast<std::size_t>(s)];
      word &= word - 1;
    }
    return out;
  }
};

std::vector<Permutation> permutations(std::size_t n, bool fix_first) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do {
    if (fix_first && p[0] != 0) continue;
    if (std::is_sorted(p.begin(), p.end())) continue;  // identity
    Permutation perm{p, std::vector<std::uint64_t>(std::size_t{1} << n)};
    for (std::uint64_t s = 0; s < perm.set_image.size(); ++s) {
      std::uint64_t t = 0;
      for (std::size_t w = 0; w < n; ++w) {
        if ((s >> w) & 1) t |= std::uint64_t{1} << p[w];
      }
      perm.set_image[s] = t;
    }
    out.push_back(std::move(perm));
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int modal_depth_of(const SearchTarget& t) {
  if (const auto* f = std::get_if<Formula>(&t)) return static_cast<int>(f->modal_depth());
  if (const auto* s = std::get_if<Schema>(&t)) return static_cast<int>(s->body.modal_depth());
  const auto& r = std::get<RuleSchema>(t);
  int d = static_cast<int>(std::max(r.premise.modal_depth(), r.conclusion.modal_depth()));
  for (const auto& side : r.side_conditions) {
    // Modal side conditions are global constraints; only full search is complete.
    if (side.modal_depth() > 0) return 2;
  }
  return d;
}

// Evaluates a target on a frame and reports the first falsifying world.
class TargetEvaluator {
 public:
  TargetEvaluator(const SearchTarget& target, const std::vector<std::string>& atoms) {
    if (const auto* f = std::get_if<Formula>(&target)) {
      kind_ = 0;
      main_.emplace_back(*f, atoms);
    } else if (const auto* s = std::get_if<Schema>(&target)) {
      kind_ = 1;
      vars_.assign(s->metavariables.begin(), s->metavariables.end());
      for (const auto& a : deontic::atoms(s->body)) {
        if (!s->metavariables.contains(a)) {
          throw std::invalid_argument("schema " + s->name + " has concrete atom '" + a + "'");
        }
      }
      main_.emplace_back(s->body, vars_);
    } else {
      kind_ = 2;
      const auto& r = std::get<RuleSchema>(target);
      vars_.assign(r.metavariables.begin(), r.metavariables.end());
      main_.emplace_back(Formula::implication(r.premise, r.conclusion), vars_);
      for (const auto& side : r.side_conditions) sides_.emplace_back(side, vars_);
    }
  }

  const std::vector<std::string>& variables() const { return vars_; }

  // Returns the falsifying world; `assignment` receives metavariable sets.
  std::optional<std::size_t> falsify(const Frame& frame, std::span<const std::uint64_t> valuation,
                                     std::vector<std::uint64_t>& assignment) const {
    const std::uint64_t all = frame.universe().bits();
    if (kind_ == 0) {
      const auto t = main_[0].run(frame, valuation).bits();
      if (t == all) return std::nullopt;
      return static_cast<std::size_t>(std::countr_zero(all & ~t));
    }
    const std::uint64_t limit = std::uint64_t{1} << frame.world_count;
    assignment.assign(vars_.size(), 0);
    while (true) {
      bool sides_hold = true;
      for (const auto& side : sides_) {
        if (side.run(frame, assignment).bits() != all) {
          sides_hold = false;
          break;
        }
      }
      if (sides_hold) {
        const auto t = main_[0].run(frame, assignment).bits();
        if (t != all) return static_cast<std::size_t>(std::countr_zero(all & ~t));
      }
      std::size_t i = 0;
      while (i < assignment.size() && ++assignment[i] == limit) assignment[i++] = 0;
      if (i == assignment.size()) return std::nullopt;
    }
  }

 private:
  int kind_ = 0;
  std::vector<std::string> vars_;
  std::vector<detail::CompiledFormula> main_;
  std::vector<detail::CompiledFormula> sides_;
};

}  // namespace

CountermodelReport find_countermodel(const SearchTarget& target, const std::set<FrameProperty>& required,
                                     const SearchBounds& bounds) {
  if (bounds.hard_cap > kSearchWorldLimit) {
    throw std::invalid_argument("hard cap above " + std::to_string(kSearchWorldLimit) + " worlds");
  }
  if (bounds.max_worlds < 1 || bounds.max_worlds > bounds.hard_cap) {
    throw std::invalid_argument("max_worlds must be between 1 and " + std::to_string(bounds.hard_cap));
  }
  const bool formula_target = std::holds_alternative<Formula>(target);
  if (formula_target) {
    for (const auto& a : atoms(std::get<Formula>(target))) {
      if (std::find(bounds.atoms.begin(), bounds.atoms.end(), a) == bounds.atoms.end()) {
        throw std::invalid_argument("target atom '" + a + "' is not in the search atom list");
      }
    }
  }
  const std::vector<std::string> val_atoms = formula_target ? bounds.atoms : std::vector<std::string>{};
  const TargetEvaluator evaluator(target, val_atoms);

  const int depth = modal_depth_of(target);
  CountermodelReport report;
  report.mode = depth == 0 ? SearchMode::Propositional : depth == 1 ? SearchMode::SingleWorld : SearchMode::Full;
  const auto start = Clock::now();
  const auto deadline = bounds.timeout ? std::optional(start + *bounds.timeout) : std::nullopt;
  std::uint64_t ticks = 0;
  auto finish = [&](CountermodelReport::Outcome o) {
    report.outcome = o;
    report.stats.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    return report;
  };

  const bool o_closed = required.contains(FrameProperty::OSupplemented);
  const bool p_closed = required.contains(FrameProperty::PSupplemented);
  std::vector<std::uint64_t> assignment;

  for (std::size_t n = 1; n <= bounds.max_worlds; ++n) {
    const std::uint64_t subsets = std::uint64_t{1} << n;
    const std::size_t active = report.mode == SearchMode::Propositional ? 0
                               : report.mode == SearchMode::SingleWorld ? 1
                                                                        : n;
    const auto cand_o = active ? collections(n, bounds.max_sets, o_closed) : std::vector<std::uint64_t>{0};
    const auto cand_p = active ? collections(n, bounds.max_sets, p_closed) : std::vector<std::uint64_t>{0};
    const auto perms = n <= kPruneLimit ? permutations(n, report.mode == SearchMode::SingleWorld)
                                        : std::vector<Permutation>{};

    Frame frame = Frame::empty(n);
    std::vector<std::uint64_t> valuation(val_atoms.size(), 0);
    // Frame odometer: digit 2w is N_O(w), digit 2w+1 is N_P(w); digit 0 most significant.
    const std::size_t digits = 2 * active;
    std::vector<std::size_t> idx(digits, 0);
    std::vector<std::uint64_t> key(2 * n, 0);
    std::vector<const Permutation*> stabiliser;

    while (true) {  // valuations, first atom most significant
      // Skip valuations that are not minimal in their orbit.
      bool valuation_minimal = true;
      stabiliser.clear();
      for (const auto& p : perms) {
        int cmp = 0;
        for (std::size_t a = 0; a < valuation.size() && cmp == 0; ++a) {
          const auto img = p.set_image[valuation[a]];
          cmp = img < valuation[a] ? -1 : img > valuation[a] ? 1 : 0;
        }
        if (cmp < 0) {
          valuation_minimal = false;
          break;
        }
        if (cmp == 0) stabiliser.push_back(&p);
      }

      if (valuation_minimal) {
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {  // frames
          std::fill(key.begin(), key.end(), 0);
          for (std::size_t d = 0; d < digits; ++d) key[d] = (d % 2 == 0 ? cand_o : cand_p)[idx[d]];

          bool canonical = true;
          for (const Permutation* p : stabiliser) {
            // Compare key(p . frame) with key(frame) lexicographically.
            std::vector<std::uint64_t> img(2 * n, 0);
            for (std::size_t w = 0; w < n; ++w) {
              img[2 * p->image[w]] = p->apply_collection(key[2 * w]);
              img[2 * p->image[w] + 1] = p->apply_collection(key[2 * w + 1]);
            }
            if (img < key) {
              canonical = false;
              break;
            }
          }

          if (!canonical) {
            ++report.stats.pruned_by_isomorphism;
          } else {
            ++report.stats.models_examined;
            for (std::size_t w = 0; w < n; ++w) {
              frame.obligation[w].assign_word(key[2 * w]);
              frame.permission[w].assign_word(key[2 * w + 1]);
            }
            const bool admitted = std::all_of(required.begin(), required.end(), [&](FrameProperty prop) {
              for (std::size_t w = 0; w < std::max<std::size_t>(active, 1); ++w) {
                if (check_property_at(frame, w, prop)) return false;
              }
              return true;
            });
            if (!admitted) {
              ++report.stats.pruned_by_property;
            } else if (auto world = evaluator.falsify(frame, valuation, assignment)) {
              Valuation v;
              if (formula_target) {
                for (std::size_t a = 0; a < val_atoms.size(); ++a) v[val_atoms[a]] = WorldSet(valuation[a]);
              } else {
                for (std::size_t a = 0; a < evaluator.variables().size(); ++a) {
                  v[evaluator.variables()[a]] = WorldSet(assignment[a]);
                }
              }
              report.model.emplace(default_world_names(n), frame, std::move(v));
              report.world = *world;
              return finish(CountermodelReport::Outcome::Found);
            }
          }
          if (deadline && (++ticks & 0xFF) == 0 && Clock::now() > *deadline) {
            return finish(CountermodelReport::Outcome::TimedOut);
          }

          std::size_t d = digits;
          while (d > 0) {
            --d;
            const std::size_t size = (d % 2 == 0 ? cand_o : cand_p).size();
            if (++idx[d] < size) break;
            idx[d] = 0;
            if (d == 0) {
              d = digits + 1;  // wrapped
              break;
            }
          }
          if (digits == 0 || d == digits + 1) break;
        }
      }

      std::size_t a = valuation.size();
      bool wrapped = true;
      while (a > 0) {
        --a;
        if (++valuation[a] < subsets) {
          wrapped = false;
          break;
        }
        valuation[a] = 0;
      }
      if (wrapped) break;
    }
  }
  return finish(CountermodelReport::Outcome::Exhausted);
}

bool reverify(const CountermodelReport& report, const SearchTarget& target,
              const std::set<FrameProperty>& required) {
  if (report.outcome != CountermodelReport::Outcome::Found || !report.model) return false;
  const NeighbourhoodModel& m = *report.model;
  for (auto p : required) {
    const auto r = check_property(m, p);
    if (!r.satisfied()) return false;
  }
  if (const auto* f = std::get_if<Formula>(&target)) return !eval(m, report.world, *f);
  if (const auto* s = std::get_if<Schema>(&target)) return !eval(m, report.world, s->body);
  const auto& r = std::get<RuleSchema>(target);
  for (const auto& side : r.side_conditions) {
    if (!model_valid(m, side)) return false;
  }
  return eval(m, report.world, r.premise) && !eval(m, report.world, r.conclusion);
}

SearchTarget parse_target(std::string_view text) {
  if (const Schema* s = find_axiom(text)) return *s;
  if (const RuleSchema* r = find_rule(text)) return *r;
  return parse(text);
}

// ---------------------------------------------------------------------------

Formula RemainderResult::remainder() const {
  if (surviving.empty()) throw std::logic_error("empty remainder");
  Formula d = surviving.front();
  for (std::size_t i = 1; i < surviving.size(); ++i) d = Formula::disjunction(d, surviving[i]);
  return Formula::strong_permission(d);
}

RemainderResult compute_remainder(const std::vector<Formula>& disjuncts, const std::vector<Formula>& theory,
                                  const RemainderOptions& options) {
  if (disjuncts.empty()) throw std::invalid_argument("no disjuncts");
  std::vector<Formula> facts;
  for (const auto& f : theory) facts.push_back(expand_pw(f));
  auto has = [&](const Formula& f) { return std::find(facts.begin(), facts.end(), f) != facts.end(); };
  auto weakly_permitted = [&](const Formula& d) {
    return has(expand_pw(Formula::weak_permission(d)));
  };

  RemainderResult result;
  for (const auto& d : disjuncts) {
    const Formula nd = expand_pw(d);
    std::optional<Formula> eliminator;
    for (std::size_t i = 0; i < facts.size() && !eliminator; ++i) {
      const Formula& f = facts[i];
      if (!f.is(Connective::Obl)) continue;
      const Formula& r = f.operand();
      if (r == Formula::negation(nd) ||
          (options.ifcp_elimination && is_tautology(Formula::implication(r, Formula::negation(nd))))) {
        eliminator = theory[i];
      }
    }
    if (eliminator) {
      result.eliminated.push_back({d, *eliminator});
    } else {
      result.surviving.push_back(d);
    }
  }
  if (result.surviving.empty()) {
    throw std::domain_error("every disjunct is forbidden; with D_s this contradicts the disjunctive permission");
  }
  if (result.surviving.size() == 1) {
    result.detached.push_back(Formula::strong_permission(result.surviving.front()));
    return result;
  }
  if (!result.eliminated.empty()) return result;
  for (std::size_t i = 0; i < result.surviving.size(); ++i) {
    const Formula& d = result.surviving[i];
    if (!weakly_permitted(d)) continue;
    bool rest_ok = options.lift_afcp2;
    if (!rest_ok) {
      std::optional<Formula> rest;
      for (std::size_t j = 0; j < result.surviving.size(); ++j) {
        if (j == i) continue;
        rest = rest ? Formula::disjunction(*rest, result.surviving[j]) : result.surviving[j];
      }
      rest_ok = weakly_permitted(*rest);
    }
    if (rest_ok) result.detached.push_back(Formula::strong_permission(d));
  }
  return result;
}

std::vector<Formula> parse_theory(std::string_view text) {
  std::vector<Formula> out;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    if (!line.empty()) out.push_back(parse(line));
  }
  return out;
}

}  // namespace deontic
