#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "deontic/formula.hpp"
#include "deontic/frames.hpp"
#include "deontic/inclusions.hpp"
#include "deontic/model.hpp"
#include "deontic/model_io.hpp"
#include "deontic/proof.hpp"
#include "deontic/search.hpp"
#include "deontic/systems.hpp"

namespace deontic::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kTimeout = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  fs::path fixtures;
  SystemRegistry registry = SystemRegistry::with_builtins();
};

// Accepts a path as given, with a default extension, or under the fixtures
// directory (optionally inside `subdir`).
fs::path locate(const Context& ctx, const std::string& arg, const std::string& ext, const std::string& subdir = "") {
  std::vector<fs::path> bases = {fs::path(arg), ctx.fixtures / arg};
  if (!subdir.empty()) bases.push_back(ctx.fixtures / subdir / arg);
  for (const auto& b : bases) {
    if (fs::is_regular_file(b)) return b;
    fs::path with = b;
    with += ext;
    if (fs::is_regular_file(with)) return with;
  }
  throw UsageError("no such file: " + arg);
}

json set_json(const NeighbourhoodModel& m, WorldSet s) {
  json a = json::array();
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    if (s.contains(w)) a.push_back(m.world_names()[w]);
  }
  return a;
}

std::string witness_text(const NeighbourhoodModel& m, const PropertyWitness& w) {
  std::string s = "at " + m.world_names()[w.world] + ": X=" + m.render_set(w.x);
  if (w.y) s += " Y=" + m.render_set(*w.y);
  if (w.z) s += " Z=" + m.render_set(*w.z);
  if (w.q) s += " Q=" + m.render_set(*w.q);
  return s;
}

json witness_json(const NeighbourhoodModel& m, const PropertyWitness& w) {
  json j{{"world", m.world_names()[w.world]}, {"X", set_json(m, w.x)}};
  if (w.y) j["Y"] = set_json(m, *w.y);
  if (w.z) j["Z"] = set_json(m, *w.z);
  if (w.q) j["Q"] = set_json(m, *w.q);
  return j;
}

std::string assignment_text(const NeighbourhoodModel& m, const SetAssignment& a) {
  std::string s;
  for (const auto& [var, set] : a) {
    if (!s.empty()) s += ", ";
    s += var + "=" + m.render_set(set);
  }
  return s;
}

std::vector<FrameProperty> parse_properties(const std::vector<std::string>& names) {
  std::vector<FrameProperty> out;
  for (const auto& n : names) {
    const auto p = parse_property(n);
    if (!p) throw UsageError("unknown frame property '" + n + "'");
    out.push_back(*p);
  }
  return out;
}

void print_transcript(Context& ctx, const ScenarioResult& r) {
  if (ctx.json) {
    json j{{"name", r.name}, {"valid", r.verdict.valid}, {"transcript", r.transcript}};
    if (!r.verdict.valid) j["failure"] = {{"line", r.verdict.line}, {"reason", r.verdict.reason}};
    json c = json::array();
    for (const auto& f : r.conclusions) c.push_back(render(f));
    j["conclusions"] = c;
    ctx.out << j.dump(2) << "\n";
    return;
  }
  for (const auto& line : r.transcript) ctx.out << line << "\n";
}

// ---------------------------------------------------------------------------

int cmd_parse(Context& ctx, const std::string& text) {
  const Formula f = parse(text);
  if (ctx.json) {
    json j{{"formula", render(f)}, {"expanded", render(expand_pw(f))}, {"modal_depth", f.modal_depth()},
           {"atoms", atoms(f)}};
    ctx.out << j.dump(2) << "\n";
  } else {
    ctx.out << render(f) << "\n";
  }
  return kOk;
}

int cmd_eval(Context& ctx, const std::string& model_arg, const std::string& text, const std::string& world) {
  const auto m = load_model(locate(ctx, model_arg, ".json"));
  const Formula f = parse(text);
  const WorldSet t = truth_set(m, f);
  std::optional<bool> value;
  if (!world.empty()) value = t.contains(m.world_index(world));
  if (ctx.json) {
    json j{{"formula", render(f)}, {"truth_set", set_json(m, t)}};
    if (value) j[world] = *value;
    ctx.out << j.dump(2) << "\n";
  } else {
    ctx.out << "[[" << render(f) << "]] = " << m.render_set(t) << "\n";
    if (value) ctx.out << world << ": " << (*value ? "true" : "false") << "\n";
  }
  return kOk;
}

int cmd_classify(Context& ctx, const std::string& model_arg) {
  const auto m = load_model(locate(ctx, model_arg, ".json"));
  json j = json::array();
  for (auto p : kAllProperties) {
    const auto r = check_property(m, p);
    if (ctx.json) {
      json e{{"property", to_string(p)}, {"satisfied", r.satisfied()}};
      if (r.violation) e["witness"] = witness_json(m, *r.violation);
      j.push_back(e);
    } else {
      ctx.out << std::left << std::setw(14) << to_string(p)
              << (r.satisfied() ? "satisfied" : "violated " + witness_text(m, *r.violation)) << "\n";
    }
  }
  if (ctx.json) ctx.out << j.dump(2) << "\n";
  return kOk;
}

int cmd_check_frame(Context& ctx, const std::string& model_arg, const std::vector<std::string>& schemas,
                    const std::vector<std::string>& props) {
  if (schemas.empty() && props.empty()) throw UsageError("give --schema or --property");
  const auto m = load_model(locate(ctx, model_arg, ".json"));
  bool all = true;
  json j = json::array();
  for (const auto& name : schemas) {
    FrameValidity v;
    std::string label;
    if (const Schema* s = find_axiom(name)) {
      v = schema_valid_on_frame(m.frame(), *s);
      label = s->name;
    } else if (const RuleSchema* r = find_rule(name)) {
      v = rule_valid_on_frame(m.frame(), *r);
      label = r->name;
    } else {
      throw UsageError("unknown schema or rule '" + name + "'");
    }
    all = all && v.valid();
    if (ctx.json) {
      json e{{"schema", label}, {"valid", v.valid()}};
      if (v.counterexample) {
        json a;
        for (const auto& [var, set] : v.counterexample->assignment) a[var] = set_json(m, set);
        e["counterexample"] = {{"world", m.world_names()[v.counterexample->world]}, {"assignment", a}};
      }
      j.push_back(e);
    } else {
      ctx.out << std::left << std::setw(14) << label;
      if (v.valid()) {
        ctx.out << "valid\n";
      } else {
        ctx.out << "violated at " << m.world_names()[v.counterexample->world] << " with "
                << assignment_text(m, v.counterexample->assignment) << "\n";
      }
    }
  }
  for (auto p : parse_properties(props)) {
    const auto r = check_property(m, p);
    all = all && r.satisfied();
    if (ctx.json) {
      json e{{"property", to_string(p)}, {"satisfied", r.satisfied()}};
      if (r.violation) e["witness"] = witness_json(m, *r.violation);
      j.push_back(e);
    } else {
      ctx.out << std::left << std::setw(14) << to_string(p)
              << (r.satisfied() ? "satisfied" : "violated " + witness_text(m, *r.violation)) << "\n";
    }
  }
  if (ctx.json) ctx.out << j.dump(2) << "\n";
  return all ? kOk : kFailed;
}

int cmd_prove(Context& ctx, const std::string& script_arg) {
  const auto path = locate(ctx, script_arg, ".proof");
  const auto r = replay_script(path.stem().string(), load_proof_script(path), ctx.registry, ctx.fixtures);
  print_transcript(ctx, r);
  return r.verdict.valid ? kOk : kFailed;
}

int cmd_verify_table1(Context& ctx, std::vector<std::string> systems, bool all) {
  if (all) {
    systems.clear();
    for (const auto& n : ctx.registry.names()) {
      if (!ctx.registry.get(n).derivable.empty()) systems.push_back(n);
    }
  }
  if (systems.empty()) throw UsageError("name a system or pass --all");
  bool ok = true;
  json j = json::array();
  for (const auto& name : systems) {
    const auto report = verify_table1(name, ctx.registry, ctx.fixtures);
    ok = ok && report.all_valid();
    if (ctx.json) {
      json entries = json::array();
      for (const auto& e : report.entries) {
        json x{{"name", e.name}, {"valid", e.verdict.valid}};
        if (!e.verdict.valid) x["reason"] = e.verdict.reason, x["line"] = e.verdict.line;
        entries.push_back(x);
      }
      j.push_back({{"system", report.system}, {"entries", entries}, {"unresolved", report.unresolved}});
      continue;
    }
    ctx.out << report.system << "\n";
    for (const auto& e : report.entries) {
      ctx.out << "  " << std::left << std::setw(10) << e.name;
      if (e.verdict.valid) {
        ctx.out << "valid\n";
      } else {
        ctx.out << "invalid";
        if (e.verdict.line) ctx.out << " at line " << e.verdict.line;
        ctx.out << ": " << e.verdict.reason << "\n";
      }
    }
    for (const auto& u : report.unresolved) {
      ctx.out << "  " << std::left << std::setw(10) << u << "unresolved (no such schema or rule)\n";
    }
  }
  if (ctx.json) ctx.out << j.dump(2) << "\n";
  return ok ? kOk : kFailed;
}

struct CountermodelArgs {
  std::string target;
  std::vector<std::string> require;
  std::string frame_class;
  std::size_t max_worlds = 3;
  std::size_t max_sets = 2;
  std::vector<std::string> atoms;
  double timeout_secs = 0;
};

int cmd_countermodel(Context& ctx, const CountermodelArgs& a) {
  const SearchTarget target = parse_target(a.target);
  std::set<FrameProperty> required;
  for (auto p : parse_properties(a.require)) required.insert(p);
  if (!a.frame_class.empty()) {
    for (auto p : ctx.registry.frame_class(a.frame_class)) required.insert(p);
  }
  SearchBounds bounds;
  bounds.max_worlds = a.max_worlds;
  bounds.max_sets = a.max_sets;
  bounds.atoms = a.atoms;
  if (bounds.atoms.empty()) {
    if (const auto* f = std::get_if<Formula>(&target)) {
      const auto as = deontic::atoms(*f);
      bounds.atoms.assign(as.begin(), as.end());
    }
  }
  if (a.timeout_secs > 0) {
    bounds.timeout = std::chrono::milliseconds(static_cast<long long>(a.timeout_secs * 1000));
  }
  const auto report = find_countermodel(target, required, bounds);
  const bool found = report.outcome == CountermodelReport::Outcome::Found;
  const bool checked = found && reverify(report, target, required);

  if (ctx.json) {
    json j{{"outcome", to_string(report.outcome)},
           {"mode", to_string(report.mode)},
           {"stats",
            {{"models_examined", report.stats.models_examined},
             {"pruned_by_property", report.stats.pruned_by_property},
             {"pruned_by_isomorphism", report.stats.pruned_by_isomorphism},
             {"elapsed_ms", report.stats.elapsed.count()}}}};
    if (found) {
      j["world"] = report.model->world_names()[report.world];
      j["model"] = json::parse(model_to_json(*report.model));
      j["reverified"] = checked;
    }
    ctx.out << j.dump(2) << "\n";
  } else {
    ctx.out << "outcome: " << to_string(report.outcome) << " (" << to_string(report.mode) << " search)\n"
            << "models examined: " << report.stats.models_examined
            << ", pruned by property: " << report.stats.pruned_by_property
            << ", pruned by isomorphism: " << report.stats.pruned_by_isomorphism << "\n";
    if (found) {
      ctx.out << "falsified at " << report.model->world_names()[report.world]
              << (checked ? " (re-verified)" : " (RE-VERIFICATION FAILED)") << "\n"
              << model_to_json(*report.model) << "\n";
    }
  }
  switch (report.outcome) {
    case CountermodelReport::Outcome::Found: return checked ? kOk : kFailed;
    case CountermodelReport::Outcome::Exhausted: return kFailed;
    case CountermodelReport::Outcome::TimedOut: return kTimeout;
  }
  return kFailed;
}

std::vector<Formula> disjuncts_of(const Formula& f) {
  const Formula body = f.is(Connective::PermS) ? f.operand() : f;
  return flatten(body, Connective::Or);
}

json remainder_json(const RemainderResult& r) {
  json elim = json::array();
  for (const auto& e : r.eliminated) elim.push_back({{"disjunct", render(e.disjunct)}, {"by", render(e.obligation)}});
  json surv = json::array(), det = json::array();
  for (const auto& f : r.surviving) surv.push_back(render(f));
  for (const auto& f : r.detached) det.push_back(render(f));
  return {{"eliminated", elim}, {"surviving", surv}, {"remainder", render(r.remainder())}, {"detached", det}};
}

void print_remainder(std::ostream& out, const RemainderResult& r) {
  for (const auto& e : r.eliminated) out << "  eliminated " << render(e.disjunct) << " by " << render(e.obligation) << "\n";
  out << "  remainder  " << render(r.remainder()) << "\n";
  for (const auto& d : r.detached) out << "  detached   " << render(d) << "\n";
}

int cmd_remainder(Context& ctx, const std::string& text, const std::string& theory_arg, bool ifcp, bool afcp2) {
  const auto disjuncts = disjuncts_of(parse(text));
  const auto theory = parse_theory(read_text_file(locate(ctx, theory_arg, ".theory", "theories")));
  try {
    const auto r = compute_remainder(disjuncts, theory, {ifcp, afcp2});
    if (ctx.json) {
      ctx.out << remainder_json(r).dump(2) << "\n";
    } else {
      print_remainder(ctx.out, r);
    }
    return kOk;
  } catch (const std::domain_error& e) {
    ctx.err << "error: " << e.what() << "\n";
    return kFailed;
  }
}

int cmd_demo(Context& ctx, const std::string& name) {
  const auto available = scenario_names(ctx.fixtures);
  if (name.empty()) {
    for (const auto& n : available) ctx.out << n << "\n";
    return kOk;
  }
  if (std::find(available.begin(), available.end(), name) == available.end()) {
    throw UsageError("unknown demo '" + name + "'");
  }
  std::vector<std::string> parts = {name};
  if (name == "five-disjuncts") parts.push_back("five-disjuncts-extended");

  bool ok = true;
  for (const auto& part : parts) {
    const auto r = run_scenario(part, ctx.registry, ctx.fixtures);
    ok = ok && r.verdict.valid;
    if (!ctx.json) ctx.out << "== " << part << "\n";
    print_transcript(ctx, r);
    if (!ctx.json && r.verdict.valid && !r.conclusions.empty()) {
      ctx.out << "derived: " << render(r.conclusions.back()) << "\n";
    }
    // The remainder procedure on the same obligations, for comparison.
    const auto theory_path = ctx.fixtures / "theories" / (part + ".theory");
    if (fs::is_regular_file(theory_path)) {
      const auto script = load_proof_script(ctx.fixtures / "scenarios" / (part + ".proof"));
      const auto rem = compute_remainder(disjuncts_of(script.hypotheses.front()),
                                         parse_theory(read_text_file(theory_path)));
      if (ctx.json) {
        ctx.out << remainder_json(rem).dump(2) << "\n";
      } else {
        ctx.out << "remainder procedure:\n";
        print_remainder(ctx.out, rem);
      }
    }
  }
  return ok ? kOk : kFailed;
}

std::string separator_text(const SeparatorCheck& s) {
  if (!s.error.empty()) return s.fixture + ": " + s.error;
  std::string t = s.fixture + ": ";
  if (s.verified()) return t + "verified, falsifies " + *s.falsified;
  if (!s.missing.empty()) {
    t += "outside the smaller class (lacks";
    for (auto p : s.missing) t += " " + std::string(to_string(p));
    t += ")";
  }
  if (!s.falsified) t += (s.missing.empty() ? "" : ", ") + std::string("validates every principle of the larger system");
  return t;
}

int cmd_inclusions(Context& ctx) {
  const auto facts = inclusion_report(ctx.registry, ctx.fixtures);
  bool consistent = true;
  json j = json::array();
  for (const auto& f : facts) {
    const bool ok = f.included() && f.antitone && (f.strict() || f.collapses());
    consistent = consistent && ok;
    const std::string status = !f.included()  ? "inclusion unverified"
                               : f.strict()    ? "strict"
                               : f.collapses() ? "equal (not strict)"
                                               : "strictness unverified";
    if (ctx.json) {
      auto checks = [](const std::vector<DerivationCheck>& v) {
        json a = json::array();
        for (const auto& d : v) a.push_back({{"principle", d.principle}, {"in", d.system}, {"valid", d.verdict.valid}});
        return a;
      };
      json e{{"smaller", f.smaller}, {"larger", f.larger}, {"status", status},
             {"evidence", checks(f.evidence)}, {"converse", checks(f.converse)}, {"antitone", f.antitone}};
      if (f.separator) e["separator"] = f.separator->fixture;
      if (f.printed_fixture) {
        e["printed_fixture"] = {{"fixture", f.printed_fixture->fixture}, {"verified", f.printed_fixture->verified()}};
      }
      j.push_back(e);
      continue;
    }
    ctx.out << f.smaller << " < " << f.larger << "  " << status << "\n";
    for (const auto& d : f.evidence) {
      ctx.out << "  derives " << d.principle << " in " << d.system << ": " << (d.verdict.valid ? "valid" : "INVALID")
              << "\n";
    }
    for (const auto& d : f.converse) {
      if (d.verdict.valid) ctx.out << "  converse: " << d.principle << " derivable in " << d.system << "\n";
    }
    if (f.separator) ctx.out << "  separator " << separator_text(*f.separator) << "\n";
    if (f.printed_fixture) ctx.out << "  printed model " << separator_text(*f.printed_fixture) << "\n";
    ctx.out << "  frame classes antitone: " << (f.antitone ? "yes" : "NO") << "\n";
  }
  if (ctx.json) ctx.out << j.dump(2) << "\n";
  return consistent ? kOk : kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deontic logic engine: guarded free-choice permission over neighbourhood models", "deontic"};
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false;
  std::string fixtures = DEONTIC_FIXTURES_DIR;
  std::vector<std::string> system_files;
  app.add_flag("--json", as_json, "Structured output");
  app.add_option("--fixtures", fixtures, "Fixture directory");
  app.add_option("--system", system_files, "Extra system definition (JSON); repeatable");

  std::string formula, model, script, world, target_text, theory, demo_name;
  std::vector<std::string> schemas, props, systems;
  bool all = false, ifcp = false, afcp2 = false;
  CountermodelArgs cm;

  auto* parse_cmd = app.add_subcommand("parse", "Parse and print a formula");
  parse_cmd->add_option("formula", formula)->required();

  auto* eval_cmd = app.add_subcommand("eval", "Truth set of a formula in a model");
  eval_cmd->add_option("model", model)->required();
  eval_cmd->add_option("formula", formula)->required();
  eval_cmd->add_option("--world", world, "Report the value at this world");

  auto* classify_cmd = app.add_subcommand("classify", "Frame properties of a model");
  classify_cmd->add_option("model", model)->required();

  auto* check_cmd = app.add_subcommand("check-frame", "Frame validity of schemas/rules and frame properties");
  check_cmd->add_option("model", model)->required();
  check_cmd->add_option("--schema", schemas, "Axiom or rule name; repeatable");
  check_cmd->add_option("--property", props, "Frame property; repeatable");

  auto* prove_cmd = app.add_subcommand("prove", "Check a proof script");
  prove_cmd->add_option("script", script)->required();

  auto* table_cmd = app.add_subcommand("verify-table1", "Check the derivable entries of systems");
  table_cmd->add_option("systems", systems);
  table_cmd->add_flag("--all", all, "Every system with derivable entries");

  auto* cm_cmd = app.add_subcommand("countermodel", "Bounded countermodel search");
  cm_cmd->add_option("--target", cm.target, "Formula, axiom name or rule name")->required();
  cm_cmd->add_option("--require", cm.require, "Frame properties")->delimiter(',');
  cm_cmd->add_option("--class", cm.frame_class, "Require the frame class of a system");
  cm_cmd->add_option("--max-worlds", cm.max_worlds)->capture_default_str();
  cm_cmd->add_option("--max-sets", cm.max_sets)->capture_default_str();
  cm_cmd->add_option("--atoms", cm.atoms)->delimiter(',');
  cm_cmd->add_option("--timeout-secs", cm.timeout_secs);

  auto* rem_cmd = app.add_subcommand("remainder", "Remainder of a disjunctive permission");
  rem_cmd->add_option("disjunction", formula, "d1 | ... | dn or Ps(d1 | ... | dn)")->required();
  rem_cmd->add_option("--theory", theory, "Theory file, one formula per line")->required();
  rem_cmd->add_flag("--ifcp", ifcp, "Eliminate by O r with r -> ~d a tautology");
  rem_cmd->add_flag("--afcp2", afcp2, "Lift survivors with AFCP2_P");

  auto* demo_cmd = app.add_subcommand("demo", "Replay a bundled scenario");
  demo_cmd->add_option("name", demo_name);

  auto* incl_cmd = app.add_subcommand("inclusions", "Inclusions between the FCP systems");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Context ctx{out, err, as_json, fs::path(fixtures)};
  try {
    for (const auto& f : system_files) ctx.registry.define(load_system_definition(locate(ctx, f, ".json", "systems")));
    const auto systems_dir = ctx.fixtures / "systems";
    if (fs::is_directory(systems_dir)) {
      std::vector<fs::path> defs;
      for (const auto& e : fs::directory_iterator(systems_dir)) {
        if (e.path().extension() == ".json") defs.push_back(e.path());
      }
      std::sort(defs.begin(), defs.end());
      for (const auto& p : defs) {
        auto def = load_system_definition(p);
        if (!ctx.registry.contains(def.name)) ctx.registry.define(std::move(def));
      }
    }

    if (*parse_cmd) return cmd_parse(ctx, formula);
    if (*eval_cmd) return cmd_eval(ctx, model, formula, world);
    if (*classify_cmd) return cmd_classify(ctx, model);
    if (*check_cmd) return cmd_check_frame(ctx, model, schemas, props);
    if (*prove_cmd) return cmd_prove(ctx, script);
    if (*table_cmd) return cmd_verify_table1(ctx, systems, all);
    if (*cm_cmd) return cmd_countermodel(ctx, cm);
    if (*rem_cmd) return cmd_remainder(ctx, formula, theory, ifcp, afcp2);
    if (*demo_cmd) return cmd_demo(ctx, demo_name);
    if (*incl_cmd) return cmd_inclusions(ctx);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const ProofParseError& e) {
    err << "script error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace deontic::cli
