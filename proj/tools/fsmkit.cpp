// fsmkit command-line driver.
//
// Exit codes: 0 success, 1 a "no" answer (no stable model, not stable, not
// tight, unsat, refuted), 2 usage, input or fragment errors.

#include "fsmkit/eliminations.hpp"
#include "fsmkit/interp_json.hpp"
#include "fsmkit/parser.hpp"
#include "fsmkit/related.hpp"
#include "fsmkit/smt.hpp"
#include "fsmkit/sorts.hpp"
#include "fsmkit/stable.hpp"
#include "fsmkit/transforms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::json;
using namespace fsmkit;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program load(const std::string& path) { return parse_program(read_file(path), path); }

json load_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw DecodeError(path + ": " + e.what());
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

struct Common {
  std::string file;
  std::vector<std::string> universe;  // sort=extent
  std::string relative_to;
  bool relative_given = false;
  unsigned jobs = 1;
};

UniverseSpec spec_from_flags(const std::vector<std::string>& flags, const Signature& sig) {
  UniverseSpec spec;
  for (const auto& f : flags) {
    auto eq = f.find('=');
    if (eq == std::string::npos) throw ConfigError("--universe expects sort=extent, got '" + f + "'");
    std::string sort = f.substr(0, eq);
    if (!sig.has_sort(sort)) throw ConfigError("--universe names unknown sort '" + sort + "'");
    spec[sort] = parse_extent(f.substr(eq + 1));
  }
  return spec;
}

std::shared_ptr<const Universe> make_universe(const Signature& sig, const Common& o, const UniverseSpec& extra = {}) {
  UniverseSpec spec = extra;
  for (auto& [s, v] : spec_from_flags(o.universe, sig)) spec[s] = v;
  for (const auto& s : sig.user_sorts())
    if (!sig.sort(s).builtin() && !sig.sort(s).fixed_extent() && !spec.count(s))
      throw DomainError("sort '" + s + "' has no extent; give one with --universe " + s + "=lo..hi");
  return std::make_shared<Universe>(sig, spec);
}

std::vector<std::string> intensional(const Program& p, const Common& o) {
  if (!o.relative_given) return p.intensional;
  auto c = split_list(o.relative_to);
  check_intensional(p.signature, c);
  return c;
}

StableMethod method_of(const std::string& m) {
  if (m == "reduct") return StableMethod::Reduct;
  if (m == "second-order") return StableMethod::SecondOrder;
  if (m == "both") return StableMethod::Both;
  throw ConfigError("unknown method '" + m + "' (reduct, second-order, both)");
}

void add_common(CLI::App* cmd, Common& o, bool universe = true, bool relative = true) {
  cmd->add_option("file", o.file, "program (.fsm)")->required()->check(CLI::ExistingFile);
  if (universe) cmd->add_option("--universe", o.universe, "extent of a sort: sort=lo..hi or sort=a,b,c");
  if (relative)
    cmd->add_option("--relative-to", o.relative_to, "intensional constants, comma separated")
        ->each([&o](const std::string&) { o.relative_given = true; });
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_parse(const Common& o, bool as_json) {
  Program p = load(o.file);
  if (!as_json) {
    std::cout << print_program(p);
    return kYes;
  }
  const Signature& sig = p.signature;
  json j;
  j["file"] = o.file;
  j["sorts"] = json::array();
  for (const auto& s : sig.user_sorts()) {
    json e{{"name", s}};
    if (auto ext = sig.sort(s).fixed_extent()) {
      e["extent"] = json::array();
      for (const auto& v : *ext) e["extent"].push_back(value_to_json(v));
    }
    j["sorts"].push_back(e);
  }
  j["functions"] = json::array();
  for (const auto& f : sig.user_functions())
    j["functions"].push_back({{"name", f}, {"args", sig.function(f).args}, {"value", sig.function(f).value}});
  j["predicates"] = json::array();
  for (const auto& q : sig.user_predicates()) j["predicates"].push_back({{"name", q}, {"args", sig.predicate(q).args}});
  j["intensional"] = p.intensional;
  j["rules"] = json::array();
  for (const auto& r : p.rules) j["rules"].push_back(print_rule(r));
  print_json(j);
  return kYes;
}

int cmd_ground(const Common& o, const std::string& interp_path) {
  Program p = load(o.file);
  Formula F = fol_representation(p);
  if (interp_path.empty()) {
    auto u = make_universe(p.signature, o);
    std::cout << print_ground(ground(F, Interpretation(u))) << "\n";
    return kYes;
  }
  json j = load_json(interp_path);
  auto u = make_universe(p.signature, o, universe_spec_from_json(j, p.signature));
  Interpretation I = interpretation_from_json(j, u);
  if (!I.total()) throw ContractError("the reduct needs a total interpretation");
  std::cout << print_ground(simplify_ground(reduct(ground(F, I), I))) << "\n";
  return kYes;
}

int cmd_stable(const Common& o, const std::string& method, const std::string& fix_path) {
  Program p = load(o.file);
  auto c = intensional(p, o);
  UniverseSpec extra;
  json fixed_json;
  if (!fix_path.empty()) {
    fixed_json = load_json(fix_path);
    extra = universe_spec_from_json(fixed_json, p.signature);
  }
  auto u = make_universe(p.signature, o, extra);
  Interpretation fixed = fix_path.empty() ? Interpretation(u) : interpretation_from_json(fixed_json, u);
  StableOptions opts;
  opts.method = method_of(method);
  opts.jobs = std::max(1u, o.jobs);
  auto models = stable_models(fol_representation(p), c, fixed, opts);
  json j;
  j["file"] = o.file;
  j["intensional"] = c;
  j["method"] = method;
  j["count"] = models.size();
  j["models"] = json::array();
  for (const auto& m : models) j["models"].push_back(interpretation_to_json(m));
  print_json(j);
  return models.empty() ? kNo : kYes;
}

int cmd_check(const Common& o, const std::string& interp_path, const std::string& method) {
  Program p = load(o.file);
  auto c = intensional(p, o);
  json ij = load_json(interp_path);
  auto u = make_universe(p.signature, o, universe_spec_from_json(ij, p.signature));
  Interpretation I = interpretation_from_json(ij, u);
  if (!I.total()) {
    std::string missing;
    for (const auto& s : I.missing_symbols()) missing += (missing.empty() ? "" : ", ") + s;
    throw ContractError("interpretation has no table for " + missing);
  }
  Formula F = fol_representation(p);
  json j;
  j["file"] = o.file;
  j["intensional"] = c;
  j["method"] = method;
  bool stable;
  if (method == "reduct") {
    StableVerdict v = explain_stable(F, c, I);
    stable = v.stable;
    j["model"] = v.model;
    j["witness"] = v.witness ? interpretation_to_json(*v.witness) : json(nullptr);
  } else {
    stable = check_stable(F, c, I, method_of(method));
    j["model"] = satisfies(I, F);
    j["witness"] = nullptr;
  }
  j["stable"] = stable;
  print_json(j);
  return stable ? kYes : kNo;
}

int cmd_complete(const Common& o) {
  Program p = load(o.file);
  auto c = intensional(p, o);
  Formula cnf = clark_normal_form(fol_representation(p), c, p.signature);
  std::cout << print_formula(complete(cnf, c, p.signature)) << "\n";
  return kYes;
}

int cmd_check_tight(const Common& o, bool as_json) {
  Program p = load(o.file);
  auto c = intensional(p, o);
  auto cycle = dependency_graph(fol_representation(p), c).find_cycle();
  std::string path;
  if (cycle)
    for (const auto& v : *cycle) path += (path.empty() ? "" : " -> ") + v;
  if (as_json) {
    json j{{"file", o.file}, {"intensional", c}, {"tight", !cycle}};
    j["cycle"] = cycle ? json(*cycle) : json(nullptr);
    print_json(j);
  } else {
    std::cout << (cycle ? "not tight: " + path : std::string("tight")) << "\n";
  }
  return cycle ? kNo : kYes;
}

int cmd_unfold(const Common& o) {
  Program p = load(o.file);
  auto c = intensional(p, o);
  std::cout << print_formula(unfold(fol_representation(p), c, p.signature)) << "\n";
  return kYes;
}

int cmd_eliminate(const Common& o, const std::string& pred, const std::string& func, const std::string& as,
                  const std::string& value_sort) {
  Program p = load(o.file);
  auto c = intensional(p, o);
  Formula F = fol_representation(p);
  if (pred.empty() == func.empty()) throw ConfigError("give exactly one of --predicate and --function");
  std::set<std::string> used;
  for (const auto& s : p.signature.user_functions()) used.insert(s);
  for (const auto& s : p.signature.user_predicates()) used.insert(s);
  for (const auto& s : p.signature.user_sorts()) used.insert(s);
  if (!pred.empty()) {
    const std::string fn = as.empty() ? fresh_name(pred + "_fn", used) : as;
    auto e = eliminate_predicate(F, p.signature, pred, fn,
                                 value_sort.empty() ? std::nullopt : std::optional<std::string>(value_sort));
    std::cout << print_declarations(e.signature);
    std::cout << "% intensional: ";
    auto c2 = replace_constant(c, pred, fn);
    for (std::size_t i = 0; i < c2.size(); ++i) std::cout << (i ? ", " : "") << c2[i];
    std::cout << "\n" << print_formula(e.combined()) << "\n";
    return kYes;
  }
  const std::string pr = as.empty() ? fresh_name(func + "_graph", used) : as;
  auto e = eliminate_function(F, p.signature, func, pr);
  std::cout << print_declarations(e.signature);
  std::cout << "% intensional: ";
  auto c2 = replace_constant(c, func, pr);
  for (std::size_t i = 0; i < c2.size(); ++i) std::cout << (i ? ", " : "") << c2[i];
  std::cout << "\n" << print_formula(e.combined()) << "\n";
  return kYes;
}

int cmd_desort(const Common& o, bool no_choice) {
  Program p = load(o.file);
  Desorted d = to_unsorted(fol_representation(p), p.signature);
  std::cout << print_declarations(d.signature);
  std::cout << "% formula\n" << print_formula(d.formula) << "\n";
  auto section = [](const char* name, const std::vector<Formula>& fs) {
    if (fs.empty()) return;
    std::cout << "% " << name << "\n";
    for (const auto& f : fs) std::cout << print_formula(f) << "\n";
  };
  section("subsort", d.subsort_axioms);
  section("nonempty", d.nonempty_axioms);
  section("value", d.value_axioms);
  if (!no_choice) {
    section("function choice", d.function_choice_axioms);
    section("predicate choice", d.predicate_choice_axioms);
  }
  return kYes;
}

int cmd_to_smt(const Common& o, const std::string& logic, const std::string& solver_flag, const std::string& out,
               std::size_t models) {
  Program p = load(o.file);
  auto c = intensional(p, o);
  UniverseSpec spec = spec_from_flags(o.universe, p.signature);
  Universe u(p.signature, spec);
  SmtOptions opts;
  if (!logic.empty()) opts.logic = logic;
  SmtScript script = smt_from_program(fol_representation(p), c, u, opts);
  const std::string text = script.render();
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw ConfigError("cannot write " + out);
    f << text;
  }
  auto solver = solver_from_env(solver_flag.empty() ? std::nullopt : std::optional<std::string>(solver_flag));
  if (!solver) {
    if (out.empty()) std::cout << text;
    return kYes;
  }
  auto found = all_smt_models(*solver, script, std::max<std::size_t>(models, 1));
  auto up = std::make_shared<Universe>(u);
  json j{{"file", o.file}, {"logic", script.logic}, {"intensional", c}};
  j["result"] = found.empty() ? "unsat" : "sat";
  j["models"] = json::array();
  for (const auto& m : found) j["models"].push_back(interpretation_to_json(model_to_interpretation(m, script, up)));
  print_json(j);
  return found.empty() ? kNo : kYes;
}

// compare -------------------------------------------------------------------

struct Semantics {
  std::string name;
  std::function<bool(const Interpretation&)> verdict;
};

AtomSet atoms_of(const Interpretation& I, const std::vector<std::string>& atoms) {
  AtomSet x;
  for (const auto& a : atoms)
    if (I.predicate_value(a, {})) x.insert(a);
  return x;
}

int cmd_compare(const Common& o, const std::string& list, bool all_rows) {
  Program p = load(o.file);
  auto c = intensional(p, o);
  auto u = make_universe(p.signature, o);
  Formula F = fol_representation(p);
  std::vector<Semantics> sems;
  json unavailable = json::object();
  auto cp = std::make_shared<std::optional<ConstraintProgram>>();
  auto constraint = [&]() -> const ConstraintProgram& {
    if (!*cp) *cp = constraint_program(p);
    return **cp;
  };
  for (const auto& name : split_list(list)) {
    try {
      if (name == "fsm") {
        sems.push_back({name, [&, c](const Interpretation& I) { return check_stable(F, c, I); }});
      } else if (name == "if") {
        if_diamond(p, {}, {});
        for (const auto& s : c)
          if (!p.signature.has_function(s)) throw FragmentError("IF semantics needs intensional functions only");
        sems.push_back({name, [&, c](const Interpretation& I) { return if_check(p, c, I); }});
      } else if (name == "cm") {
        for (const auto& s : c)
          if (!p.signature.has_function(s)) throw FragmentError("causal models need explainable functions only");
        causal_translate(p, c);
        sems.push_back({name, [&, c](const Interpretation& I) { return cm_check(p, c, I); }});
      } else if (name == "clingcon") {
        const ConstraintProgram& prog = constraint();
        sems.push_back({name, [&prog](const Interpretation& I) {
                          auto sets = clingcon_answer_sets(prog, I);
                          return std::find(sets.begin(), sets.end(), atoms_of(I, prog.atoms)) != sets.end();
                        }});
      } else if (name == "ljn") {
        const ConstraintProgram& prog = constraint();
        theory_atoms(prog);
        std::vector<Value> slice;
        if (u->has_extent(kIntSort)) slice = u->extent(kIntSort);
        else if (u->has_extent(kRealSort)) slice = u->extent(kRealSort);
        if (slice.empty()) throw ConfigError("ljn needs a numeric slice, e.g. --universe int=0..5");
        sems.push_back({name, [&prog, slice](const Interpretation& I) {
                          return ljn_answer_check(prog, atoms_of(I, prog.atoms), theory_atoms_true(prog, I), slice);
                        }});
      } else if (name == "lw") {
        Interpretation probe(u);
        for (const auto& s : probe.missing_symbols()) probe.init_symbol(s);
        if (!is_p_interpretation(p, probe)) throw FragmentError("sorts must be sets of names for Lin-Wang programs");
        sems.push_back({name, [&](const Interpretation& I) { return lw_answer_check(p, I); }});
      } else {
        throw ConfigError("unknown semantics '" + name + "' (fsm, if, cm, clingcon, ljn, lw)");
      }
    } catch (const FragmentError& e) {
      unavailable[name] = e.what();
    } catch (const ContractError& e) {
      unavailable[name] = e.what();
    }
  }
  json j{{"file", o.file}, {"intensional", c}};
  j["semantics"] = json::array();
  for (const auto& s : sems) j["semantics"].push_back(s.name);
  j["unavailable"] = unavailable;
  j["rows"] = json::array();
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0, disagreements = 0;
  for_each_interpretation(Interpretation(u), [&](const Interpretation& I) {
    ++total;
    json verdicts = json::object();
    bool any = false, all = true;
    for (const auto& s : sems) {
      const bool v = s.verdict(I);
      verdicts[s.name] = v;
      counts[s.name] += v;
      any = any || v;
      all = all && v;
    }
    if (any && !all) ++disagreements;
    if (any || all_rows) j["rows"].push_back({{"interpretation", interpretation_to_json(I)}, {"verdicts", verdicts}});
    return true;
  });
  j["interpretations"] = total;
  j["accepted"] = json::object();
  for (const auto& s : sems) j["accepted"][s.name] = counts[s.name];
  j["disagreements"] = disagreements;
  print_json(j);
  return kYes;
}

int cmd_se_check(const std::string& a, const std::string& b, int kmax, const std::vector<std::string>& universe) {
  Program p = load(a), q = load(b);
  if (print_declarations(p.signature) != print_declarations(q.signature))
    throw ConfigError("the two programs must have the same declarations");
  UniverseSpec base = spec_from_flags(universe, p.signature);
  auto rep = check_strong_equivalence_bounded(fol_representation(p), fol_representation(q), p.signature, kmax, base);
  json j{{"files", {a, b}}, {"refuted", rep.refuted}, {"bound", rep.bound}, {"interpretations", rep.interpretations},
         {"constants", rep.constants}, {"mirrors", rep.mirrors}};
  j["counterexample"] = rep.counterexample ? interpretation_to_json(*rep.counterexample) : json(nullptr);
  print_json(j);
  return rep.refuted ? kNo : kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fsmkit: functional stable models on finite structures"};
  app.require_subcommand(1);
  Common o;
  app.add_option("--jobs,-j", o.jobs, "worker threads for enumeration")->check(CLI::PositiveNumber);

  bool as_json = false;
  auto* parse = app.add_subcommand("parse", "validate a program and print it back");
  add_common(parse, o, false, false);
  parse->add_flag("--json", as_json, "print the signature and rules as JSON");

  std::string interp_path;
  auto* ground_cmd = app.add_subcommand("ground", "ground the program over a universe (or print its reduct)");
  add_common(ground_cmd, o, true, false);
  ground_cmd->add_option("--reduct", interp_path, "interpretation whose reduct to print (.json)");

  std::string method = "reduct", fix_path;
  auto* stable = app.add_subcommand("stable", "enumerate stable models");
  add_common(stable, o);
  stable->add_option("--method", method, "reduct, second-order or both")->check(CLI::IsMember({"reduct", "second-order", "both"}));
  stable->add_option("--fix", fix_path, "interpretation fixing some symbols (.json)");

  std::string check_interp;
  auto* check = app.add_subcommand("check", "check one interpretation");
  add_common(check, o);
  check->add_option("interpretation", check_interp, "interpretation (.json)")->required()->check(CLI::ExistingFile);
  check->add_option("--method", method, "reduct, second-order or both")->check(CLI::IsMember({"reduct", "second-order", "both"}));

  auto* comp = app.add_subcommand("complete", "print the completion");
  add_common(comp, o, false);

  auto* tight = app.add_subcommand("check-tight", "tightness relative to the intensional constants");
  add_common(tight, o, false);
  tight->add_flag("--json", as_json, "JSON output");

  auto* unf = app.add_subcommand("unfold", "print the unfolded formula");
  add_common(unf, o, false);

  std::string pred, func, as, value_sort;
  auto* elim = app.add_subcommand("eliminate", "replace a predicate by a function or the reverse");
  add_common(elim, o, false);
  elim->add_option("--predicate", pred, "predicate to replace by a function");
  elim->add_option("--function", func, "function to replace by a predicate");
  elim->add_option("--as", as, "name of the new constant");
  elim->add_option("--value-sort", value_sort, "value sort of the new function");

  bool no_choice = false;
  auto* desort = app.add_subcommand("desort", "reduce to a single sort");
  add_common(desort, o, false, false);
  desort->add_flag("--no-choice", no_choice, "omit the choice axioms");

  std::string logic, solver, out;
  std::size_t models = 1;
  auto* smt = app.add_subcommand("to-smt", "emit SMT-LIB for a tight program (and solve it)");
  add_common(smt, o);
  smt->add_option("--logic", logic, "logic tag to use instead of the inferred one");
  smt->add_option("--solver", solver, "solver executable (FSMKIT_SOLVER overrides)");
  smt->add_option("--output,-o", out, "write the script to a file");
  smt->add_option("--models", models, "models to enumerate with a solver")->check(CLI::PositiveNumber);

  std::string semantics = "fsm";
  bool all_rows = false;
  auto* cmp = app.add_subcommand("compare", "verdicts of related semantics per interpretation");
  add_common(cmp, o);
  cmp->add_option("--semantics", semantics, "comma separated: fsm, if, cm, clingcon, ljn, lw");
  cmp->add_flag("--all", all_rows, "list every interpretation, not only accepted ones");

  std::vector<std::string> se_files;
  int kmax = 2;
  std::vector<std::string> se_universe;
  auto* se = app.add_subcommand("se-check", "bounded strong equivalence of two programs");
  se->add_option("files", se_files, "two programs")->required()->expected(2)->check(CLI::ExistingFile);
  se->add_option("--max-universe", kmax, "largest open-sort size")->check(CLI::PositiveNumber);
  se->add_option("--universe", se_universe, "numeric slices: int=lo..hi");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*parse) return cmd_parse(o, as_json);
    if (*ground_cmd) return cmd_ground(o, interp_path);
    if (*stable) return cmd_stable(o, method, fix_path);
    if (*check) return cmd_check(o, check_interp, method);
    if (*comp) return cmd_complete(o);
    if (*tight) return cmd_check_tight(o, as_json);
    if (*unf) return cmd_unfold(o);
    if (*elim) return cmd_eliminate(o, pred, func, as, value_sort);
    if (*desort) return cmd_desort(o, no_choice);
    if (*smt) return cmd_to_smt(o, logic, solver, out, models);
    if (*cmp) return cmd_compare(o, semantics, all_rows);
    if (*se) return cmd_se_check(se_files[0], se_files[1], kmax, se_universe);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
