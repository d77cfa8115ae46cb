#include "fsmkit/related.hpp"

#include "fsmkit/parser.hpp"
#include "fsmkit/stable.hpp"

#include <algorithm>
#include <map>

namespace fsmkit {

namespace {

void require_functions(const Signature& sig, const std::vector<std::string>& f, const char* what) {
  for (const auto& s : f) {
    if (!sig.has_function(s) || sig.function(s).background != Background::User)
      throw ContractError(std::string(what) + " '" + s + "' is not a user function constant");
  }
}

std::vector<Formula> body_literals(const Formula& f) {
  std::vector<Formula> out;
  if (!f) return out;
  for (const auto& g : conjuncts(f))
    if (!is_top(g)) out.push_back(g);
  return out;
}

std::map<std::string, std::string> renaming(const std::vector<std::string>& from, const std::vector<std::string>& to) {
  std::map<std::string, std::string> m;
  for (std::size_t i = 0; i < from.size(); ++i) m[from[i]] = to[i];
  return m;
}

Formula closure(const Formula& head, const Formula& body) {
  Rule r;
  r.head = head;
  r.body = body;
  return rule_formula(r);
}

Interpretation extend(const Interpretation& I, std::shared_ptr<const Universe> eu) {
  Interpretation J(std::move(eu));
  for (const auto& f : I.function_symbols()) {
    J.init_symbol(f);
    J.function_table(f) = I.function_table(f);
  }
  for (const auto& p : I.predicate_symbols()) {
    J.init_symbol(p);
    J.predicate_table(p) = I.predicate_table(p);
  }
  for (const auto& [key, v] : I.builtin_overrides()) J.override_builtin(key.first, key.second, v);
  return J;
}

// Some assignment of the mirror functions d, differing from f in I, that
// satisfies phi (a sentence over the signature extended with d).
bool alternative_exists(const Interpretation& I, const std::vector<std::string>& f, const std::vector<std::string>& d,
                        const Formula& phi) {
  const Universe& u = I.universe();
  auto eu = std::make_shared<Universe>(with_mirrors(u.signature(), f, d), open_extents(u));
  Interpretation J = extend(I, eu);
  for (const auto& m : d) J.init_symbol(m);
  CellOdometer odo(free_cells(*eu, d));
  odo.write(J);
  do {
    bool same = true;
    for (std::size_t i = 0; i < f.size() && same; ++i) same = J.function_table(d[i]) == I.function_table(f[i]);
    if (!same && satisfies(J, phi)) return true;
  } while (odo.next(J));
  return false;
}

bool user_function(const Signature& sig, const std::string& s) {
  return sig.has_function(s) && sig.function(s).background == Background::User;
}

bool user_predicate(const Signature& sig, const std::string& s) {
  return sig.has_predicate(s) && sig.predicate(s).background == Background::User;
}

bool mentions_any(const Term& t, const std::vector<std::string>& f) {
  return term_mentions(t, std::set<std::string>(f.begin(), f.end()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Causal theories

Formula causal_translate(const Program& t, const std::vector<std::string>& explainable) {
  require_functions(t.signature, explainable, "explainable constant");
  std::vector<Formula> parts;
  for (const auto& r : t.rules) {
    const Formula& h = r.head;
    if (h->kind == FormulaKind::Bottom) {
      parts.push_back(closure(make_bottom(), r.body ? r.body : make_top()));
      continue;
    }
    Formula head;
    if (h->kind == FormulaKind::Equal) {
      for (int side = 0; side < 2 && !head; ++side) {
        const Term& l = h->terms[side];
        const Term& rhs = h->terms[1 - side];
        if (l->kind != TermKind::Apply || std::find(explainable.begin(), explainable.end(), l->name) == explainable.end())
          continue;
        bool plain = !mentions_any(rhs, explainable);
        for (const auto& a : l->args) plain = plain && !mentions_any(a, explainable);
        if (plain) head = make_equal(l, rhs);
      }
    }
    if (!head) throw FragmentError("causal rule is not definite: " + print_rule(r));
    parts.push_back(r.body ? closure(head, make_not(make_not(r.body))) : closure(head, nullptr));
  }
  return conjunction(parts);
}

Formula causal_translate(const Program& t) { return causal_translate(t, t.intensional); }

bool cm_check(const Program& t, const std::vector<std::string>& explainable, const Interpretation& I) {
  require_functions(t.signature, explainable, "explainable constant");
  if (!I.total()) throw ContractError("causal model check needs a total interpretation");
  if (!satisfies(I, fol_representation(t))) return false;
  if (explainable.empty()) return true;
  auto d = mirror_names(I.signature(), explainable);
  auto ren = renaming(explainable, d);
  std::vector<Formula> parts;
  for (const auto& r : t.rules) parts.push_back(closure(rename_symbols(r.head, ren), r.body));
  return !alternative_exists(I, explainable, d, conjunction(parts));
}

std::vector<Interpretation> causal_models(const Program& t, const std::vector<std::string>& explainable,
                                          const Interpretation& fixed) {
  std::vector<Interpretation> out;
  for_each_interpretation(fixed, [&](const Interpretation& I) {
    if (cm_check(t, explainable, I)) out.push_back(I);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// IF-programs

namespace {

void check_if_part(const Formula& f, const Rule& r) {
  switch (f->kind) {
    case FormulaKind::Implies:
      if (!is_negation(f) && !is_top(f)) throw FragmentError("implication inside an IF rule: " + print_rule(r));
      check_if_part(f->a, r);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      check_if_part(f->a, r);
      check_if_part(f->b, r);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
    case FormulaKind::Choice:
      check_if_part(f->a, r);
      return;
    default:
      return;
  }
}

Formula diamond(const Formula& f, const std::map<std::string, std::string>& ren, bool negated) {
  switch (f->kind) {
    case FormulaKind::Bottom:
      return f;
    case FormulaKind::Atom:
    case FormulaKind::Equal:
      return negated ? f : rename_symbols(f, ren);
    case FormulaKind::And:
      return make_and(diamond(f->a, ren, negated), diamond(f->b, ren, negated));
    case FormulaKind::Or:
      return make_or(diamond(f->a, ren, negated), diamond(f->b, ren, negated));
    case FormulaKind::Implies:
      // Only negations are left here.
      return make_implies(diamond(f->a, ren, true), f->b);
    case FormulaKind::Choice:
      return make_or(diamond(f->a, ren, negated), make_not(f->a));
    case FormulaKind::Forall:
      return make_forall(f->name, f->sort, diamond(f->a, ren, negated));
    case FormulaKind::Exists:
      return make_exists(f->name, f->sort, diamond(f->a, ren, negated));
  }
  return f;
}

}  // namespace

Formula if_diamond(const Program& p, const std::vector<std::string>& f, const std::vector<std::string>& d) {
  auto ren = renaming(f, d);
  std::vector<Formula> parts;
  for (const auto& r : p.rules) {
    check_if_part(r.head, r);
    if (r.body) check_if_part(r.body, r);
    parts.push_back(closure(diamond(r.head, ren, false), r.body ? diamond(r.body, ren, false) : nullptr));
  }
  return conjunction(parts);
}

bool if_check(const Program& p, const std::vector<std::string>& f, const Interpretation& I) {
  require_functions(p.signature, f, "intensional constant");
  if (!I.total()) throw ContractError("IF check needs a total interpretation");
  auto d = mirror_names(I.signature(), f);
  Formula dia = if_diamond(p, f, d);
  if (!satisfies(I, fol_representation(p))) return false;
  if (f.empty()) return true;
  return !alternative_exists(I, f, d, dia);
}

// ---------------------------------------------------------------------------
// Constraint answer set programs

namespace {

bool propositional_atom(const Signature& sig, const Formula& f) {
  return f->kind == FormulaKind::Atom && user_predicate(sig, f->name) && f->terms.empty();
}

bool mentions_user_predicate(const Signature& sig, const Formula& f) {
  for (const auto& s : constants_of(f))
    if (user_predicate(sig, s)) return true;
  return false;
}

std::vector<std::size_t> least_model(const std::vector<ConstraintRule>& rules, const std::vector<bool>& active,
                                     const std::map<std::string, std::size_t>& index, std::vector<char>& in) {
  // Returns the rules whose positive body holds; `in` receives the atoms.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (!active[i] || !rules[i].head || in[index.at(*rules[i].head)]) continue;
      bool body = true;
      for (const auto& b : rules[i].positive) body = body && in[index.at(b)];
      if (body) {
        in[index.at(*rules[i].head)] = 1;
        changed = true;
      }
    }
  }
  std::vector<std::size_t> fired;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (!active[i]) continue;
    bool body = true;
    for (const auto& b : rules[i].positive) body = body && in[index.at(b)];
    if (body) fired.push_back(i);
  }
  return fired;
}

// X is the least set closed under the active rules and violates none of
// their constraints.
bool least_and_consistent(const ConstraintProgram& p, const std::vector<bool>& active, const AtomSet& x) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < p.atoms.size(); ++i) index[p.atoms[i]] = i;
  std::vector<char> in(p.atoms.size(), 0);
  for (std::size_t i : least_model(p.rules, active, index, in))
    if (!p.rules[i].head) return false;
  for (std::size_t i = 0; i < p.atoms.size(); ++i)
    if (static_cast<bool>(in[i]) != (x.count(p.atoms[i]) != 0)) return false;
  return true;
}

bool negative_ok(const ConstraintRule& r, const AtomSet& x) {
  for (const auto& n : r.negative)
    if (x.count(n)) return false;
  return true;
}

AtomSet subset(const std::vector<std::string>& atoms, std::uint64_t bits) {
  AtomSet x;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (bits >> i & 1u) x.insert(atoms[i]);
  return x;
}

constexpr std::size_t kMaxAtoms = 24;

bool linear(const Term& t, const Signature& sig) {
  if (t->kind != TermKind::Apply) return true;
  if (!is_arith_builtin(t->name)) return t->args.empty() && user_function(sig, t->name);
  if (t->name == "*") {
    const bool lit0 = t->args[0]->kind == TermKind::Literal, lit1 = t->args[1]->kind == TermKind::Literal;
    if (!lit0 && !lit1) return false;
  }
  if (t->name == "/" && t->args[1]->kind != TermKind::Literal) return false;
  return linear(t->args[0], sig) && linear(t->args[1], sig);
}

}  // namespace

ConstraintProgram constraint_program(const Program& p) {
  ConstraintProgram out;
  out.signature = p.signature;
  const Signature& sig = p.signature;
  for (const auto& q : sig.user_predicates())
    if (sig.predicate(q).args.empty()) out.atoms.push_back(q);
  for (const auto& f : sig.user_functions())
    if (sig.function(f).args.empty()) out.variables.push_back(f);
  for (const auto& r : p.rules) {
    ConstraintRule cr;
    if (propositional_atom(sig, r.head)) cr.head = r.head->name;
    else if (r.head->kind != FormulaKind::Bottom)
      throw FragmentError("head is not a propositional atom: " + print_rule(r));
    for (const auto& lit : body_literals(r.body)) {
      if (propositional_atom(sig, lit)) {
        cr.positive.push_back(lit->name);
      } else if (is_negation(lit) && propositional_atom(sig, lit->a)) {
        cr.negative.push_back(lit->a->name);
      } else if (!mentions_user_predicate(sig, lit)) {
        if (is_negation(lit)) cr.constraints.push_back(ConstraintLiteral{lit->a, true});
        else cr.constraints.push_back(ConstraintLiteral{lit, false});
      } else {
        throw FragmentError("body literal is neither an atom nor a constraint: " + print_formula(lit));
      }
    }
    out.rules.push_back(std::move(cr));
  }
  out.formula = fol_representation(p);
  return out;
}

Interpretation with_atoms(const Interpretation& If, const std::vector<std::string>& atoms, const AtomSet& x) {
  Interpretation I = If;
  for (const auto& a : atoms) {
    if (!I.has(a)) I.init_symbol(a);
    I.set_predicate(a, {}, x.count(a) != 0);
  }
  return I;
}

std::vector<AtomSet> clingcon_answer_sets(const ConstraintProgram& p, const Interpretation& If) {
  if (p.atoms.size() > kMaxAtoms) throw ContractError("too many atoms to enumerate answer sets");
  for (const auto& v : p.variables)
    if (!If.has(v)) throw ContractError("no value for constraint variable '" + v + "'");
  std::vector<bool> cn(p.rules.size());
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    bool ok = true;
    for (const auto& c : p.rules[i].constraints) ok = ok && satisfies(If, c.constraint) != c.negated;
    cn[i] = ok;
  }
  std::vector<AtomSet> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << p.atoms.size()); ++bits) {
    AtomSet x = subset(p.atoms, bits);
    std::vector<bool> active(p.rules.size());
    for (std::size_t i = 0; i < p.rules.size(); ++i) active[i] = cn[i] && negative_ok(p.rules[i], x);
    if (least_and_consistent(p, active, x)) out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end(), [](const AtomSet& a, const AtomSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

// ---------------------------------------------------------------------------
// ASP(LC)

std::vector<Formula> theory_atoms(const ConstraintProgram& p) {
  std::vector<Formula> out;
  for (const auto& r : p.rules) {
    for (const auto& c : r.constraints) {
      const Formula& f = c.constraint;
      const bool atomic = f->kind == FormulaKind::Equal || (f->kind == FormulaKind::Atom && is_compare_builtin(f->name));
      if (c.negated || !atomic) throw FragmentError("not a theory atom: " + print_formula(f));
      for (const auto& t : f->terms)
        if (!linear(t, p.signature)) throw FragmentError("theory atom is not linear: " + print_formula(f));
      if (std::none_of(out.begin(), out.end(), [&](const Formula& g) { return same_formula(f, g); }))
        out.push_back(f);
    }
  }
  return out;
}

std::vector<Formula> theory_atoms_true(const ConstraintProgram& p, const Interpretation& If) {
  std::vector<Formula> out;
  for (const auto& t : theory_atoms(p))
    if (satisfies(If, t)) out.push_back(t);
  return out;
}

bool ljn_answer_check(const ConstraintProgram& p, const AtomSet& x, const std::vector<Formula>& t,
                      const std::vector<Value>& slice) {
  if (slice.empty()) throw ConfigError("LJN check needs a slice to search theory-atom assignments");
  auto all = theory_atoms(p);
  auto in_t = [&](const Formula& f) {
    return std::any_of(t.begin(), t.end(), [&](const Formula& g) { return same_formula(f, g); });
  };
  for (const auto& f : t)
    if (std::none_of(all.begin(), all.end(), [&](const Formula& g) { return same_formula(f, g); }))
      throw ContractError("not a theory atom of the program: " + print_formula(f));
  for (const auto& a : x)
    if (std::find(p.atoms.begin(), p.atoms.end(), a) == p.atoms.end())
      throw ContractError("'" + a + "' is not an atom of the program");

  // T together with the negations of the other theory atoms.
  UniverseSpec spec;
  for (const auto& v : p.variables) {
    const std::string& s = p.signature.function(v).value;
    if (s == kIntSort || s == kRealSort) spec[s] = slice;
  }
  auto u = std::make_shared<Universe>(p.signature, spec);
  Interpretation probe(u);
  std::vector<Cell> cells;
  for (const auto& v : p.variables) {
    probe.init_symbol(v);
    Cell c{v, false, 0, {}, {}};
    for (const auto& val : slice)
      if (u->contains(p.signature.function(v).value, val)) c.options.push_back(val);
    if (c.options.empty()) return false;
    cells.push_back(std::move(c));
  }
  bool satisfiable = false;
  CellOdometer odo(std::move(cells));
  odo.write(probe);
  do {
    satisfiable = std::all_of(all.begin(), all.end(), [&](const Formula& f) { return satisfies(probe, f) == in_t(f); });
  } while (!satisfiable && odo.next(probe));
  if (!satisfiable) return false;

  // (X, T) satisfies the program.
  auto lc_holds = [&](const ConstraintRule& r) {
    return std::all_of(r.constraints.begin(), r.constraints.end(),
                       [&](const ConstraintLiteral& c) { return in_t(c.constraint); });
  };
  for (const auto& r : p.rules) {
    bool body = negative_ok(r, x) && lc_holds(r);
    for (const auto& b : r.positive) body = body && x.count(b);
    if (body && (!r.head || !x.count(*r.head))) return false;
  }
  // X is the least set satisfying the LJN-reduct.
  std::vector<bool> active(p.rules.size());
  for (std::size_t i = 0; i < p.rules.size(); ++i) active[i] = negative_ok(p.rules[i], x) && lc_holds(p.rules[i]);
  return least_and_consistent(p, active, x);
}

// ---------------------------------------------------------------------------
// Lin-Wang programs

namespace {

using GroundAtom = std::pair<std::string, std::vector<Value>>;

struct LwRule {
  std::optional<GroundAtom> head;  // none for bottom
  std::vector<GroundAtom> body;
};

std::string show_atom(const GroundAtom& a) {
  std::string out = a.first;
  if (!a.second.empty()) {
    out += "(";
    for (std::size_t i = 0; i < a.second.size(); ++i) out += (i ? "," : "") + a.second[i].to_string();
    out += ")";
  }
  return out;
}

struct Literal {
  Formula atom;
  bool negated = false;
};

std::vector<Literal> lw_body(const Rule& r, const Signature& sig) {
  std::vector<Literal> out;
  for (const auto& lit : body_literals(r.body)) {
    const Formula& a = is_negation(lit) ? lit->a : lit;
    const bool ok = a->kind == FormulaKind::Equal || (a->kind == FormulaKind::Atom && user_predicate(sig, a->name));
    if (!ok) throw FragmentError("not a Lin-Wang rule: " + print_rule(r));
    out.push_back(Literal{a, is_negation(lit)});
  }
  return out;
}

// Evaluated atom: ground atom for predicates, truth for equalities.
struct Evaluated {
  std::optional<GroundAtom> atom;
  bool truth = false;
};

Evaluated evaluate(const Formula& a, const Interpretation& I, Env& env) {
  Evaluated e;
  if (a->kind == FormulaKind::Equal) {
    e.truth = eval(I, a, env);
    return e;
  }
  GroundAtom g{a->name, {}};
  for (const auto& t : a->terms) {
    auto v = eval_term(I, t, env);
    if (!v) throw DomainError("term outside its type in " + print_formula(a));
    g.second.push_back(*v);
  }
  e.truth = I.predicate_value(g.first, g.second);
  e.atom = std::move(g);
  return e;
}

void assignments(const VarList& vars, std::size_t k, const Universe& u, Env& env, const std::function<void()>& fn) {
  if (k == vars.size()) {
    fn();
    return;
  }
  for (const auto& v : u.extent(vars[k].second)) {
    env.emplace_back(vars[k].first, v);
    assignments(vars, k + 1, u, env, fn);
    env.pop_back();
  }
}

std::vector<LwRule> functional_reduct(const Program& p, const Interpretation& I) {
  const Signature& sig = p.signature;
  std::vector<LwRule> out;
  for (const auto& r : p.rules) {
    const bool bottom = r.head->kind == FormulaKind::Bottom;
    if (!bottom && r.head->kind != FormulaKind::Equal &&
        !(r.head->kind == FormulaKind::Atom && user_predicate(sig, r.head->name)))
      throw FragmentError("not a Lin-Wang rule: " + print_rule(r));
    auto body = lw_body(r, sig);
    Formula whole = rule_formula(r);
    VarList vars;
    for (Formula g = whole; g->kind == FormulaKind::Forall; g = g->a) vars.emplace_back(g->name, g->sort);
    Env env;
    assignments(vars, 0, I.universe(), env, [&] {
      LwRule lr;
      for (const auto& lit : body) {
        Evaluated e = evaluate(lit.atom, I, env);
        if (lit.negated) {
          if (e.truth) return;  // not A with A true
          continue;
        }
        if (!e.atom) {
          if (!e.truth) return;  // c = d with distinct c, d
          continue;
        }
        lr.body.push_back(*e.atom);
      }
      if (!bottom) {
        Evaluated h = evaluate(r.head, I, env);
        if (!h.atom && h.truth) return;
        lr.head = h.atom;
      }
      out.push_back(std::move(lr));
    });
  }
  return out;
}

}  // namespace

bool is_p_interpretation(const Program& p, const Interpretation& I) {
  if (!I.total()) return false;
  const Signature& sig = p.signature;
  auto names_only = [&](const std::string& s) {
    if (!sig.has_sort(s)) return false;
    const SortInfo& info = sig.sort(s);
    if (info.kind != SortKind::Enumerated) return false;
    return std::all_of(info.members.begin(), info.members.end(), [](const Value& v) { return v.is_name(); });
  };
  for (const auto& f : sig.user_functions()) {
    const auto& info = sig.function(f);
    if (!names_only(info.value)) return false;
    for (const auto& a : info.args)
      if (!names_only(a)) return false;
  }
  for (const auto& q : sig.user_predicates())
    for (const auto& a : sig.predicate(q).args)
      if (!names_only(a)) return false;
  for (const auto& f : sig.user_functions()) {
    if (!I.has(f)) return false;
    const auto& values = I.universe().extent(sig.function(f).value);
    for (const auto& v : I.function_table(f))
      if (std::find(values.begin(), values.end(), v) == values.end()) return false;
  }
  return true;
}

std::vector<std::string> lw_reduct(const Program& p, const Interpretation& I) {
  if (!is_p_interpretation(p, I)) throw ContractError("not a P-interpretation");
  std::vector<std::string> out;
  for (const auto& r : functional_reduct(p, I)) {
    std::string line = r.head ? show_atom(*r.head) : "";
    if (!r.body.empty()) {
      line += line.empty() ? ":- " : " :- ";
      for (std::size_t i = 0; i < r.body.size(); ++i) line += (i ? ", " : "") + show_atom(r.body[i]);
    }
    out.push_back(line + ".");
  }
  return out;
}

bool lw_answer_check(const Program& p, const Interpretation& I) {
  if (!is_p_interpretation(p, I)) throw ContractError("not a P-interpretation");
  auto rules = functional_reduct(p, I);
  std::set<GroundAtom> model;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rules) {
      if (!r.head || model.count(*r.head)) continue;
      if (std::all_of(r.body.begin(), r.body.end(), [&](const GroundAtom& a) { return model.count(a) != 0; })) {
        model.insert(*r.head);
        changed = true;
      }
    }
  }
  for (const auto& r : rules)
    if (!r.head && std::all_of(r.body.begin(), r.body.end(), [&](const GroundAtom& a) { return model.count(a) != 0; }))
      return false;
  const Universe& u = I.universe();
  for (const auto& q : p.signature.user_predicates()) {
    const auto& args = p.signature.predicate(q).args;
    const auto& table = I.predicate_table(q);
    for (std::size_t k = 0; k < table.size(); ++k)
      if (static_cast<bool>(table[k]) != (model.count({q, u.args_of(args, k)}) != 0)) return false;
  }
  return true;
}

}  // namespace fsmkit
