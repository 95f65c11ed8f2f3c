#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "deontic/search.hpp"
#include "deontic/systems.hpp"
#include "oracles.hpp"

using namespace deontic;
using P = FrameProperty;

namespace {

using Outcome = CountermodelReport::Outcome;

// Orbit count of (V(a), N_O, N_P) over n worlds, each neighbourhood empty or
// a single subset, under world permutations. Brute force: canonical form is
// the lexicographically least image.
std::size_t orbit_count(unsigned n) {
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::vector<std::vector<unsigned>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  const unsigned subsets = 1u << n;
  const unsigned options = subsets + 1;  // 0 = empty, k = {subset k-1}
  auto map_set = [&](unsigned s, const std::vector<unsigned>& p) {
    unsigned out = 0;
    for (unsigned w = 0; w < n; ++w)
      if (s >> w & 1) out |= 1u << p[w];
    return out;
  };
  std::set<std::vector<unsigned>> canon;
  std::vector<unsigned> nb(2 * n, 0);
  for (unsigned v = 0; v < subsets; ++v) {
    std::fill(nb.begin(), nb.end(), 0u);
    while (true) {
      std::vector<unsigned> best;
      for (const auto& p : perms) {
        std::vector<unsigned> img(1 + 2 * n);
        img[0] = map_set(v, p);
        for (unsigned w = 0; w < n; ++w) {
          for (unsigned k = 0; k < 2; ++k) {
            const unsigned o = nb[2 * w + k];
            img[1 + 2 * p[w] + k] = o == 0 ? 0 : 1 + map_set(o - 1, p);
          }
        }
        if (best.empty() || img < best) best = img;
      }
      canon.insert(best);
      std::size_t i = 0;
      while (i < nb.size() && ++nb[i] == options) nb[i++] = 0;
      if (i == nb.size()) break;
    }
  }
  return canon.size();
}

SearchBounds bounds(std::size_t worlds, std::size_t sets, std::vector<std::string> atoms) {
  SearchBounds b;
  b.max_worlds = worlds;
  b.max_sets = sets;
  b.atoms = std::move(atoms);
  return b;
}

std::set<std::string> as_set(const std::vector<Formula>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) out.insert(render(f));
  return out;
}

std::vector<Formula> atoms_of(std::initializer_list<const char*> names) {
  std::vector<Formula> out;
  for (auto n : names) out.push_back(Formula::atom(n));
  return out;
}

}  // namespace

TEST_CASE("exhaustion count matches an independent orbit count") {
  CHECK(orbit_count(1) == 18);
  CHECK(orbit_count(2) == 1275);
  const Formula taut = parse("O O a | ~O O a");
  const auto r = find_countermodel(taut, {}, bounds(2, 1, {"a"}));
  CHECK(r.outcome == Outcome::Exhausted);
  CHECK(r.mode == SearchMode::Full);
  CHECK(r.stats.models_examined == orbit_count(1) + orbit_count(2));
}

TEST_CASE("tautologies have no countermodel") {
  const auto r = find_countermodel(parse("p -> p"), {P::AFCPO}, bounds(3, 2, {"p"}));
  CHECK(r.outcome == Outcome::Exhausted);
  CHECK(r.mode == SearchMode::Propositional);
  CHECK(find_countermodel(parse("O p -> O p"), {}, bounds(2, 2, {"p"})).outcome == Outcome::Exhausted);
}

TEST_CASE("separating FCP_2 from FCP_1") {
  const SearchTarget t = *find_rule("IFCP_O");
  const auto r = find_countermodel(t, {P::AFCPO}, bounds(5, 2, {"a", "b", "c"}));
  REQUIRE(r.outcome == Outcome::Found);
  CHECK(reverify(r, t, {P::AFCPO}));
  CHECK(check_property(*r.model, P::AFCPO).satisfied());
  CHECK_FALSE(check_property(*r.model, P::IFCPO).satisfied());
}

TEST_CASE("M_O countermodel is not O-supplemented") {
  const SearchTarget t = *find_axiom("M_O");
  const auto r = find_countermodel(t, {}, bounds(5, 2, {"a", "b"}));
  REQUIRE(r.outcome == Outcome::Found);
  CHECK(reverify(r, t, {}));
  CHECK_FALSE(check_property(*r.model, P::OSupplemented).satisfied());
  CHECK(r.mode == SearchMode::SingleWorld);
}

TEST_CASE("formula countermodels re-verify and are deterministic") {
  const std::vector<std::string> fs = {"O p -> Ps p", "Ps(p | q) -> Ps p", "Pw p -> Ps p", "O(p & q) -> O p",
                                       "p -> O p", "O O p -> O p"};
  for (const auto& text : fs) {
    const SearchTarget t = parse(text);
    const auto a = find_countermodel(t, {}, bounds(3, 2, {"p", "q"}));
    const auto b = find_countermodel(t, {}, bounds(3, 2, {"p", "q"}));
    INFO(text);
    REQUIRE(a.outcome == Outcome::Found);
    CHECK(reverify(a, t, {}));
    CHECK_FALSE(eval(*a.model, a.world, std::get<Formula>(t)));
    CHECK(a.model->frame() == b.model->frame());
    CHECK(a.world == b.world);
    CHECK(a.stats.models_examined == b.stats.models_examined);
  }
}

TEST_CASE("property: found countermodels satisfy the required properties") {
  oracle::Rng rng(606);
  int found = 0;
  for (int i = 0; i < 40; ++i) {
    const Formula f = oracle::random_formula(rng, 3, {"p", "q"});
    std::set<P> req;
    for (auto p : kAllProperties)
      if (oracle::coin(rng, 0.15)) req.insert(p);
    const auto r = find_countermodel(f, req, bounds(2, 2, {"p", "q"}));
    if (r.outcome != Outcome::Found) continue;
    ++found;
    INFO(render(f));
    const auto om = oracle::from_engine(*r.model);
    CHECK_FALSE((oracle::extension(om, f) >> r.world & 1));
    for (auto p : req) CHECK(oracle::property(om, p));
  }
  CHECK(found > 10);
}

TEST_CASE("bounds are validated") {
  CHECK_THROWS_AS(find_countermodel(parse("p"), {}, bounds(6, 1, {"p"})), std::invalid_argument);
  CHECK_THROWS_AS(find_countermodel(parse("p"), {}, bounds(0, 1, {"p"})), std::invalid_argument);
  CHECK_THROWS_AS(find_countermodel(parse("p & q"), {}, bounds(2, 1, {"p"})), std::invalid_argument);
  SearchBounds big = bounds(6, 1, {"p"});
  big.hard_cap = 7;
  CHECK_THROWS_AS(find_countermodel(parse("p"), {}, big), std::invalid_argument);
}

TEST_CASE("timeouts are reported") {
  SearchBounds b = bounds(5, 3, {"p", "q", "r"});
  b.timeout = std::chrono::milliseconds(50);
  const auto r = find_countermodel(parse("O Ps p | ~O Ps p"), {}, b);
  CHECK(r.outcome == Outcome::TimedOut);
  CHECK(r.stats.elapsed < std::chrono::milliseconds(2000));
}

TEST_CASE("parse_target") {
  CHECK(std::holds_alternative<Schema>(parse_target("AFCP_O")));
  CHECK(std::holds_alternative<RuleSchema>(parse_target("IFCP2_P")));
  CHECK(std::holds_alternative<Formula>(parse_target("O p -> Ps p")));
  CHECK_THROWS(parse_target("O p ->"));
}

TEST_CASE("remainder: three forbidden disjuncts") {
  const auto r = compute_remainder(atoms_of({"p", "q", "r", "s", "t"}), parse_theory("O ~p\nO ~q\nO ~r\n"));
  CHECK(render(r.remainder()) == "Ps(s | t)");
  CHECK(r.detached.empty());
  CHECK(r.eliminated.size() == 3);
  CHECK(render(r.eliminated[1].obligation) == "O ~q");
}

TEST_CASE("remainder: four forbidden disjuncts detach the last") {
  const auto r =
      compute_remainder(atoms_of({"p", "q", "r", "s", "t"}), parse_theory("O ~p\nO ~q\nO ~r\nO ~s\n"));
  CHECK(render(r.remainder()) == "Ps t");
  REQUIRE(r.detached.size() == 1);
  CHECK(render(r.detached[0]) == "Ps t");
}

TEST_CASE("remainder: everything forbidden") {
  CHECK_THROWS_AS(compute_remainder(atoms_of({"p"}), {parse("O ~p")}), std::domain_error);
  CHECK_THROWS_AS(compute_remainder({}, {}), std::invalid_argument);
}

TEST_CASE("remainder: lifting") {
  const auto disj = atoms_of({"p", "q"});
  CHECK(compute_remainder(disj, {}).detached.empty());
  const auto both = compute_remainder(disj, parse_theory("Pw p\n~O ~q"));
  CHECK(as_set(both.detached) == std::set<std::string>{"Ps p", "Ps q"});
  const auto one = compute_remainder(disj, parse_theory("Pw p"));
  CHECK(one.detached.empty());
  CHECK(as_set(compute_remainder(disj, parse_theory("Pw p"), {false, true}).detached) ==
        std::set<std::string>{"Ps p"});
}

TEST_CASE("remainder: IFCP-style elimination only on request") {
  const auto disj = atoms_of({"p", "q"});
  const auto theory = parse_theory("O(~p & r)");
  CHECK(compute_remainder(disj, theory).surviving.size() == 2);
  const auto r = compute_remainder(disj, theory, {true, false});
  CHECK(as_set(r.surviving) == std::set<std::string>{"q"});
}

TEST_CASE("property: remainder is order-insensitive and never detaches a forbidden disjunct") {
  oracle::Rng rng(8080);
  const std::vector<std::string> letters = {"p", "q", "r", "s", "t", "u"};
  for (int i = 0; i < 500; ++i) {
    std::vector<Formula> disj;
    for (const auto& l : letters)
      if (oracle::coin(rng, 0.6)) disj.push_back(Formula::atom(l));
    if (disj.empty()) disj.push_back(Formula::atom("p"));
    std::vector<Formula> theory;
    for (const auto& l : letters) {
      if (oracle::coin(rng, 0.3)) theory.push_back(parse("O ~" + l));
      if (oracle::coin(rng, 0.4)) theory.push_back(parse("Pw " + l));
    }
    const RemainderOptions opt{oracle::coin(rng, 0.5), oracle::coin(rng, 0.5)};

    auto shuffled = disj;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto theory2 = theory;
    std::shuffle(theory2.begin(), theory2.end(), rng);

    std::optional<RemainderResult> a, b;
    try {
      a = compute_remainder(disj, theory, opt);
    } catch (const std::domain_error&) {
    }
    try {
      b = compute_remainder(shuffled, theory2, opt);
    } catch (const std::domain_error&) {
    }
    REQUIRE(a.has_value() == b.has_value());
    if (!a) continue;
    CHECK(as_set(a->surviving) == as_set(b->surviving));
    CHECK(a->surviving.size() + a->eliminated.size() == disj.size());
    std::set<std::string> th;
    for (const auto& f : theory) th.insert(render(f));
    for (const auto& d : a->detached) CHECK_FALSE(th.count("O ~" + render(d.operand())));
  }
}

TEST_CASE("parse_theory") {
  const auto t = parse_theory("# header\nO ~p   # forbidden\n\n  Pw q\n");
  REQUIRE(t.size() == 2);
  CHECK(render(t[1]) == "Pw q");
  CHECK_THROWS_AS(parse_theory("O ~"), ParseError);
}
