#include "fsmkit/transforms.hpp"

#include "fsmkit/parser.hpp"
#include "fsmkit/stable.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace fsmkit {

namespace {

std::set<std::string> to_set(const std::vector<std::string>& c) { return {c.begin(), c.end()}; }

Formula strip_foralls(Formula f, VarList& vars) {
  while (f->kind == FormulaKind::Forall) {
    vars.emplace_back(f->name, f->sort);
    f = f->a;
  }
  return f;
}

bool is_atomic(const Formula& f) { return f->kind == FormulaKind::Atom || f->kind == FormulaKind::Equal; }

struct Head {
  std::string symbol;
  bool predicate = false;
  std::vector<Term> args;
  Term value;  // functions
  bool choice = false;
};

std::optional<Head> read_head(Formula h, const std::set<std::string>& cs, const Signature& sig) {
  Head out;
  if (h->kind == FormulaKind::Choice) {
    out.choice = true;
    h = h->a;
  } else if (h->kind == FormulaKind::Or && is_negation(h->b) && same_formula(h->a, h->b->a) && is_atomic(h->a)) {
    out.choice = true;
    h = h->a;
  }
  if (h->kind == FormulaKind::Atom && cs.count(h->name) && sig.has_predicate(h->name)) {
    out.symbol = h->name;
    out.predicate = true;
    out.args = h->terms;
    for (const auto& t : out.args)
      if (term_mentions(t, cs)) return std::nullopt;
    return out;
  }
  if (h->kind == FormulaKind::Equal) {
    Term l = h->terms[0], r = h->terms[1];
    auto intensional_apply = [&](const Term& t) {
      return t->kind == TermKind::Apply && cs.count(t->name) && sig.has_function(t->name);
    };
    if (!intensional_apply(l) && intensional_apply(r)) std::swap(l, r);
    if (!intensional_apply(l)) return std::nullopt;
    out.symbol = l->name;
    out.args = l->args;
    out.value = r;
    for (const auto& t : out.args)
      if (term_mentions(t, cs)) return std::nullopt;
    if (term_mentions(r, cs)) return std::nullopt;
    return out;
  }
  return std::nullopt;
}

struct Schema {
  VarList vars;  // X1..Xn, then Y for functions
  Formula head;
};

Schema schema_of(const std::string& symbol, const Signature& sig) {
  Schema s;
  std::vector<Term> args;
  const bool pred = sig.has_predicate(symbol);
  const auto& sorts = pred ? sig.predicate(symbol).args : sig.function(symbol).args;
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    s.vars.emplace_back("X" + std::to_string(i + 1), sorts[i]);
    args.push_back(make_var(s.vars.back().first, sorts[i]));
  }
  if (pred) {
    s.head = make_atom(symbol, args);
  } else {
    const std::string& value = sig.function(symbol).value;
    s.vars.emplace_back("Y", value);
    s.head = make_equal(make_apply(symbol, args), make_var("Y", value));
  }
  return s;
}

Formula disjunct_of(const Formula& conjunct, const Formula& core_body, const Head& head, VarList rule_vars,
                    const Schema& schema) {
  std::set<std::string> used;
  collect_var_names(conjunct, used);
  for (const auto& v : schema.vars) used.insert(v.first);
  std::set<std::string> schema_names;
  for (const auto& v : schema.vars) schema_names.insert(v.first);

  Formula body = core_body;
  std::vector<Term> terms = head.args;
  if (!head.predicate) terms.push_back(head.value);

  auto rename_everywhere = [&](const std::string& from, const Term& to) {
    if (body) body = substitute(body, from, to);
    for (auto& t : terms) t = substitute(t, from, to);
  };

  for (auto& v : rule_vars) {
    if (!schema_names.count(v.first)) continue;
    std::string fresh = fresh_name(v.first, used);
    rename_everywhere(v.first, make_var(fresh, v.second));
    v.first = fresh;
  }

  std::set<std::string> pending;
  for (const auto& v : rule_vars) pending.insert(v.first);
  std::vector<Formula> guards;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [xname, xsort] = schema.vars[i];
    Term t = terms[i];
    if (t->kind == TermKind::Variable && pending.count(t->name) && t->sort == xsort) {
      pending.erase(t->name);
      rename_everywhere(t->name, make_var(xname, xsort));
      continue;
    }
    guards.push_back(make_equal(make_var(xname, xsort), t));
  }

  std::vector<Formula> parts = guards;
  if (body) parts.push_back(body);
  if (head.choice) parts.push_back(make_not(make_not(schema.head)));
  Formula d = conjunction(parts);

  VarList close;
  std::set<std::string> free;
  for (const auto& v : free_vars(d)) free.insert(v.first);
  for (const auto& v : rule_vars)
    if (pending.count(v.first) && free.count(v.first)) close.push_back(v);
  return exists_all(close, d);
}

}  // namespace

Formula clark_normal_form(const Formula& f, const std::vector<std::string>& c, const Signature& sig) {
  check_intensional(sig, c);
  const auto cs = to_set(c);
  std::map<std::string, std::vector<Formula>> bodies;
  std::vector<Formula> constraints;
  for (const auto& conj : conjuncts(f)) {
    if (is_top(conj)) continue;
    if (negative_on(conj, c)) {
      constraints.push_back(conj);
      continue;
    }
    VarList vars;
    Formula core = strip_foralls(conj, vars);
    Formula body, head = core;
    if (core->kind == FormulaKind::Implies && core->b->kind != FormulaKind::Bottom) {
      body = core->a;
      head = core->b;
    }
    auto h = read_head(head, cs, sig);
    if (!h)
      throw FragmentError("rule '" + print_formula(conj) +
                          "' needs a head that is an atom, an equality or a choice on an intensional constant, "
                          "with arguments free of intensional constants");
    Schema schema = schema_of(h->symbol, sig);
    bodies[h->symbol].push_back(disjunct_of(conj, body, *h, vars, schema));
  }
  std::vector<Formula> parts;
  for (const auto& s : c) {
    Schema schema = schema_of(s, sig);
    parts.push_back(forall_all(schema.vars, make_implies(disjunction(bodies[s]), schema.head)));
  }
  parts.insert(parts.end(), constraints.begin(), constraints.end());
  return conjunction(parts);
}

Formula clark_normal_form(const Program& p) {
  return clark_normal_form(fol_representation(p), p.intensional, p.signature);
}

Formula complete(const Formula& cnf, const std::vector<std::string>& c, const Signature& sig) {
  const auto cs = to_set(c);
  std::set<std::string> defined;
  std::vector<Formula> parts;
  for (const auto& conj : conjuncts(cnf)) {
    VarList vars;
    Formula core = strip_foralls(conj, vars);
    bool is_def = false;
    if (core->kind == FormulaKind::Implies && is_atomic(core->b)) {
      const Formula& h = core->b;
      std::vector<Term> expected;
      for (const auto& [n, s] : vars) expected.push_back(make_var(n, s));
      std::string symbol;
      std::vector<Term> args;
      if (h->kind == FormulaKind::Atom) {
        symbol = h->name;
        args = h->terms;
      } else if (h->terms[0]->kind == TermKind::Apply) {
        symbol = h->terms[0]->name;
        args = h->terms[0]->args;
        args.push_back(h->terms[1]);
      }
      if (cs.count(symbol) && sig.has_symbol(symbol) && args.size() == expected.size()) {
        is_def = true;
        for (std::size_t i = 0; i < args.size(); ++i) is_def = is_def && same_term(args[i], expected[i]);
        std::set<std::string> names;
        for (const auto& v : vars) names.insert(v.first);
        is_def = is_def && names.size() == vars.size();
      }
      if (is_def) {
        if (!defined.insert(symbol).second)
          throw ContractError("not in Clark normal form: '" + symbol + "' has two definitions");
        parts.push_back(forall_all(vars, make_iff(h, core->a)));
        continue;
      }
    }
    if (!negative_on(conj, c)) throw ContractError("not in Clark normal form: '" + print_formula(conj) + "'");
    parts.push_back(conj);
  }
  for (const auto& s : c)
    if (!defined.count(s)) throw ContractError("not in Clark normal form: no definition of '" + s + "'");
  return conjunction(parts);
}

Formula completion(const Program& p) {
  return complete(clark_normal_form(p), p.intensional, p.signature);
}

// ---------------------------------------------------------------------------
// Dependency graph

std::optional<std::vector<std::string>> DependencyGraph::find_cycle() const {
  std::map<std::string, std::vector<std::string>> next;
  for (const auto& [a, b] : edges) next[a].push_back(b);
  std::map<std::string, int> state;  // 0 new, 1 on stack, 2 done
  std::vector<std::string> stack;
  std::optional<std::vector<std::string>> found;
  std::function<bool(const std::string&)> visit = [&](const std::string& v) {
    state[v] = 1;
    stack.push_back(v);
    for (const auto& w : next[v]) {
      if (state[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        std::vector<std::string> cyc(it, stack.end());
        cyc.push_back(w);
        found = cyc;
        return true;
      }
      if (state[w] == 0 && visit(w)) return true;
    }
    stack.pop_back();
    state[v] = 2;
    return false;
  };
  for (const auto& v : vertices)
    if (state[v] == 0 && visit(v)) return found;
  return std::nullopt;
}

DependencyGraph dependency_graph(const Formula& f, const std::vector<std::string>& c) {
  DependencyGraph g;
  g.vertices = c;
  const auto cs = to_set(c);
  std::function<void(const Formula&)> walk = [&](const Formula& h) {
    switch (h->kind) {
      case FormulaKind::And:
      case FormulaKind::Or:
        walk(h->a);
        walk(h->b);
        return;
      case FormulaKind::Forall:
      case FormulaKind::Exists:
        walk(h->a);
        return;
      case FormulaKind::Implies: {
        for (const auto& from : strictly_positive_symbols(h->b)) {
          if (!cs.count(from)) continue;
          for (const auto& to : strictly_positive_symbols(h->a))
            if (cs.count(to)) g.edges.insert({from, to});
        }
        walk(h->b);
        return;
      }
      default:
        return;
    }
  };
  walk(normalize(f));
  return g;
}

bool is_tight(const Formula& f, const std::vector<std::string>& c) { return dependency_graph(f, c).acyclic(); }

// ---------------------------------------------------------------------------
// Plainness and unfolding

namespace {

bool atom_f_plain(const Formula& a, const std::string& fn) {
  const std::set<std::string> only{fn};
  if (a->kind == FormulaKind::Atom) {
    for (const auto& t : a->terms)
      if (term_mentions(t, only)) return false;
    return true;
  }
  const Term& l = a->terms[0];
  const Term& r = a->terms[1];
  if (!term_mentions(l, only) && !term_mentions(r, only)) return true;
  if (l->kind != TermKind::Apply || l->name != fn || term_mentions(r, only)) return false;
  for (const auto& t : l->args)
    if (term_mentions(t, only)) return false;
  return true;
}

std::vector<std::string> functions_in(const std::vector<std::string>& c, const Signature& sig) {
  std::vector<std::string> out;
  for (const auto& s : c)
    if (sig.has_function(s)) out.push_back(s);
  return out;
}

bool atom_c_plain(const Formula& a, const std::vector<std::string>& fns) {
  for (const auto& fn : fns)
    if (!atom_f_plain(a, fn)) return false;
  return true;
}

void for_each_atom(const Formula& f, bool strictly_positive,
                   const std::function<void(const Formula&, bool)>& fn) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::Equal:
      fn(f, strictly_positive);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      for_each_atom(f->a, strictly_positive, fn);
      for_each_atom(f->b, strictly_positive, fn);
      return;
    case FormulaKind::Implies:
      for_each_atom(f->a, false, fn);
      for_each_atom(f->b, strictly_positive, fn);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      for_each_atom(f->a, strictly_positive, fn);
      return;
    case FormulaKind::Choice:
      for_each_atom(normalize(f), strictly_positive, fn);
      return;
    case FormulaKind::Bottom:
      return;
  }
}

}  // namespace

bool is_f_plain(const Formula& f, const std::string& fn) {
  bool ok = true;
  for_each_atom(f, true, [&](const Formula& a, bool) { ok = ok && atom_f_plain(a, fn); });
  return ok;
}

bool is_c_plain(const Formula& f, const std::vector<std::string>& c, const Signature& sig) {
  return !first_non_plain_atom(f, c, sig);
}

std::optional<Formula> first_non_plain_atom(const Formula& f, const std::vector<std::string>& c,
                                            const Signature& sig) {
  const auto fns = functions_in(c, sig);
  std::optional<Formula> bad;
  for_each_atom(f, true, [&](const Formula& a, bool) {
    if (!bad && !atom_c_plain(a, fns)) bad = a;
  });
  return bad;
}

bool is_head_c_plain(const Formula& f, const std::vector<std::string>& c, const Signature& sig) {
  const auto fns = functions_in(c, sig);
  bool ok = true;
  for_each_atom(f, true, [&](const Formula& a, bool sp) {
    if (sp) ok = ok && atom_c_plain(a, fns);
  });
  return ok;
}

namespace {

struct Unfolder {
  const Signature& sig;
  std::set<std::string> cs;
  std::vector<std::string> fns;
  std::set<std::string> used;

  std::string var_sort(const Term& t, const std::string& position) const {
    const std::string own = sort_of(t, sig);
    if (position.empty() || sig.sort(position).builtin() || sig.is_subsort(own, position)) return own;
    return position;
  }

  Formula atom(const Formula& a) {
    if (atom_c_plain(a, fns)) return a;
    std::vector<Term> terms;
    std::vector<std::string> positions;
    std::function<Formula(std::vector<Term>)> rebuild;
    if (a->kind == FormulaKind::Atom) {
      terms = a->terms;
      const auto& info = sig.predicate(a->name);
      for (const auto& s : info.args) positions.push_back(info.background == Background::User ? s : "");
      const std::string name = a->name;
      rebuild = [name](std::vector<Term> ts) { return make_atom(name, std::move(ts)); };
    } else {
      Term l = a->terms[0], r = a->terms[1];
      if (l->kind != TermKind::Apply && r->kind == TermKind::Apply) std::swap(l, r);
      if (l->kind != TermKind::Apply) return make_equal(l, r);
      const auto& info = sig.function(l->name);
      const bool user = info.background == Background::User;
      terms.push_back(r);
      positions.push_back(user ? info.value : "");
      for (const auto& t : l->args) {
        terms.push_back(t);
        positions.push_back(user ? info.args[terms.size() - 2] : "");
      }
      const std::string name = l->name;
      rebuild = [name](std::vector<Term> ts) {
        Term rhs = ts.front();
        ts.erase(ts.begin());
        return make_equal(make_apply(name, std::move(ts)), rhs);
      };
    }
    VarList fresh;
    std::vector<Formula> side;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (!term_mentions(terms[k], cs)) continue;
      const std::string sort = var_sort(terms[k], positions[k]);
      const std::string x = fresh_name("X", used);
      fresh.emplace_back(x, sort);
      Term xv = make_var(x, sort);
      side.push_back(make_equal(terms[k], xv));
      terms[k] = xv;
    }
    std::vector<Formula> parts{rebuild(terms)};
    for (const auto& s : side) parts.push_back(atom(s));
    return exists_all(fresh, conjunction(parts));
  }

  Formula run(const Formula& f) {
    switch (f->kind) {
      case FormulaKind::Bottom:
        return f;
      case FormulaKind::Atom:
      case FormulaKind::Equal:
        return atom(f);
      case FormulaKind::And:
        return make_and(run(f->a), run(f->b));
      case FormulaKind::Or:
        return make_or(run(f->a), run(f->b));
      case FormulaKind::Implies:
        return make_implies(run(f->a), run(f->b));
      case FormulaKind::Forall:
        return make_forall(f->name, f->sort, run(f->a));
      case FormulaKind::Exists:
        return make_exists(f->name, f->sort, run(f->a));
      case FormulaKind::Choice:
        return run(normalize(f));
    }
    return f;
  }
};

}  // namespace

Formula unfold(const Formula& f, const std::vector<std::string>& c, const Signature& sig) {
  Unfolder u{sig, to_set(c), functions_in(c, sig), {}};
  collect_var_names(f, u.used);
  return u.run(f);
}

// ---------------------------------------------------------------------------
// Bounded strong equivalence

StrongEquivalenceReport check_strong_equivalence_bounded(const Formula& f, const Formula& g, const Signature& sig,
                                                         int kmax, const UniverseSpec& base) {
  if (kmax < 1) throw ConfigError("strong equivalence bound must be at least 1");
  StrongEquivalenceReport rep;
  rep.bound = kmax;
  std::set<std::string> mentioned = constants_of(f);
  for (const auto& s : constants_of(g)) mentioned.insert(s);
  for (const auto& s : sig.user_functions())
    if (mentioned.count(s)) rep.constants.push_back(s);
  for (const auto& s : sig.user_predicates())
    if (mentioned.count(s)) rep.constants.push_back(s);
  rep.mirrors = mirror_names(sig, rep.constants);
  Signature ext = with_mirrors(sig, rep.constants, rep.mirrors);
  const auto& c = rep.constants;
  const auto& d = rep.mirrors;
  Formula check = make_and(make_iff(f, g),
                           make_implies(mirror_less(c, d, ext), make_iff(star(f, c, d, ext), star(g, c, d, ext))));

  std::vector<std::string> open;
  for (const auto& s : sig.user_sorts())
    if (!sig.sort(s).fixed_extent() && !base.count(s)) open.push_back(s);
  std::vector<int> sizes(open.size(), 1);
  std::set<std::string> varying(c.begin(), c.end());
  varying.insert(d.begin(), d.end());

  while (true) {
    UniverseSpec spec = base;
    for (std::size_t i = 0; i < open.size(); ++i) {
      std::vector<Value> items;
      for (int k = 1; k <= sizes[i]; ++k) items.push_back(Value::name(open[i] + "_" + std::to_string(k)));
      spec[open[i]] = items;
    }
    auto u = std::make_shared<Universe>(ext, spec);
    Interpretation fixed(u);
    for (const auto& s : fixed.missing_symbols())
      if (!varying.count(s)) fixed.init_symbol(s);
    for_each_interpretation(fixed, [&](const Interpretation& I) {
      ++rep.interpretations;
      if (satisfies(I, check)) return true;
      rep.refuted = true;
      rep.counterexample = I;
      return false;
    });
    if (rep.refuted) return rep;
    std::size_t i = 0;
    while (i < sizes.size() && sizes[i] == kmax) sizes[i++] = 1;
    if (i == sizes.size()) break;
    ++sizes[i];
  }
  return rep;
}

}  // namespace fsmkit
