#include "fsmkit/stable.hpp"

#include "fsmkit/parser.hpp"

#include <algorithm>
#include <thread>
#include <unordered_set>

namespace fsmkit {

// ---------------------------------------------------------------------------
// Ground formulas

namespace {

std::size_t ghash(GroundKind k, const Formula& atom, const std::vector<Ground>& kids) {
  std::size_t h = 0x51ed27u + static_cast<std::size_t>(k) * 131;
  if (atom) h ^= atom->hash + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  for (const auto& g : kids) h ^= g->hash + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Ground gnode(GroundKind k, Formula atom, std::vector<Ground> kids) {
  auto n = std::make_shared<GroundNode>();
  n->kind = k;
  n->hash = ghash(k, atom, kids);
  n->atom = std::move(atom);
  n->kids = std::move(kids);
  return n;
}

struct GroundHash {
  std::size_t operator()(const Ground& g) const { return g->hash; }
};
struct GroundEq {
  bool operator()(const Ground& a, const Ground& b) const { return same_ground(a, b); }
};

Ground make_set(GroundKind k, std::vector<Ground> members) {
  std::vector<Ground> flat;
  std::unordered_set<Ground, GroundHash, GroundEq> seen;
  std::vector<Ground> todo(members.rbegin(), members.rend());
  while (!todo.empty()) {
    Ground g = todo.back();
    todo.pop_back();
    if (g->kind == k) {
      for (auto it = g->kids.rbegin(); it != g->kids.rend(); ++it) todo.push_back(*it);
      continue;
    }
    if (seen.insert(g).second) flat.push_back(g);
  }
  return gnode(k, nullptr, std::move(flat));
}

}  // namespace

Ground ground_bottom() {
  static const Ground b = gnode(GroundKind::Bottom, nullptr, {});
  return b;
}

Ground ground_atom(const Formula& atom) { return gnode(GroundKind::Atom, atom, {}); }
Ground ground_and(std::vector<Ground> members) { return make_set(GroundKind::SetAnd, std::move(members)); }
Ground ground_or(std::vector<Ground> members) { return make_set(GroundKind::SetOr, std::move(members)); }
Ground ground_implies(const Ground& a, const Ground& b) { return gnode(GroundKind::Implies, nullptr, {a, b}); }

bool same_ground(const Ground& a, const Ground& b) {
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->kids.size() != b->kids.size()) return false;
  if (a->kind == GroundKind::Atom) return same_formula(a->atom, b->atom);
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!same_ground(a->kids[i], b->kids[i])) return false;
  return true;
}

namespace {

Term bind_term(const Term& t, const Env& env) {
  switch (t->kind) {
    case TermKind::Literal:
      return t;
    case TermKind::Variable:
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t->name) return make_lit(it->second);
      throw ContractError("free variable " + t->name + " in a formula being grounded");
    case TermKind::Apply: {
      std::vector<Term> args;
      for (const auto& a : t->args) args.push_back(bind_term(a, env));
      return make_apply(t->name, std::move(args));
    }
  }
  return t;
}

Ground ground_rec(const Formula& f, const Interpretation& I, Env& env) {
  switch (f->kind) {
    case FormulaKind::Bottom:
      return ground_bottom();
    case FormulaKind::Atom: {
      std::vector<Term> args;
      for (const auto& t : f->terms) args.push_back(bind_term(t, env));
      return ground_atom(make_atom(f->name, std::move(args)));
    }
    case FormulaKind::Equal:
      return ground_atom(make_equal(bind_term(f->terms[0], env), bind_term(f->terms[1], env)));
    case FormulaKind::And:
      return ground_and({ground_rec(f->a, I, env), ground_rec(f->b, I, env)});
    case FormulaKind::Or:
      return ground_or({ground_rec(f->a, I, env), ground_rec(f->b, I, env)});
    case FormulaKind::Implies:
      return ground_implies(ground_rec(f->a, I, env), ground_rec(f->b, I, env));
    case FormulaKind::Choice: {
      Ground g = ground_rec(f->a, I, env);
      return ground_or({g, ground_implies(g, ground_bottom())});
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      std::vector<Ground> members;
      for (const auto& v : I.universe().extent(f->sort)) {
        env.emplace_back(f->name, v);
        members.push_back(ground_rec(f->a, I, env));
        env.pop_back();
      }
      return f->kind == FormulaKind::Forall ? ground_and(std::move(members)) : ground_or(std::move(members));
    }
  }
  return ground_bottom();
}

}  // namespace

Ground ground(const Formula& f, const Interpretation& I) {
  if (has_free_vars(f)) throw ContractError("ground: formula has free variables");
  Env env;
  return ground_rec(f, I, env);
}

bool eval_ground(const Interpretation& J, const Ground& g) {
  switch (g->kind) {
    case GroundKind::Bottom:
      return false;
    case GroundKind::Atom:
      return satisfies(J, g->atom);
    case GroundKind::SetAnd:
      for (const auto& k : g->kids)
        if (!eval_ground(J, k)) return false;
      return true;
    case GroundKind::SetOr:
      for (const auto& k : g->kids)
        if (eval_ground(J, k)) return true;
      return false;
    case GroundKind::Implies:
      return !eval_ground(J, g->kids[0]) || eval_ground(J, g->kids[1]);
  }
  return false;
}

Ground reduct(const Ground& g, const Interpretation& I) {
  switch (g->kind) {
    case GroundKind::Bottom:
      return g;
    case GroundKind::Atom:
      return eval_ground(I, g) ? g : ground_bottom();
    case GroundKind::SetAnd:
    case GroundKind::SetOr: {
      std::vector<Ground> kids;
      for (const auto& k : g->kids) kids.push_back(reduct(k, I));
      return g->kind == GroundKind::SetAnd ? ground_and(std::move(kids)) : ground_or(std::move(kids));
    }
    case GroundKind::Implies:
      if (!eval_ground(I, g)) return ground_bottom();
      return ground_implies(reduct(g->kids[0], I), reduct(g->kids[1], I));
  }
  return g;
}

namespace {

bool ground_is_top(const Ground& g) {
  return g->kind == GroundKind::Implies && g->kids[0]->kind == GroundKind::Bottom;
}

Ground ground_top() { return ground_implies(ground_bottom(), ground_bottom()); }

}  // namespace

Ground simplify_ground(const Ground& g) {
  switch (g->kind) {
    case GroundKind::Bottom:
    case GroundKind::Atom:
      return g;
    case GroundKind::SetAnd: {
      std::vector<Ground> kids;
      for (const auto& k : g->kids) {
        Ground s = simplify_ground(k);
        if (s->kind == GroundKind::Bottom) return ground_bottom();
        if (!ground_is_top(s)) kids.push_back(s);
      }
      if (kids.empty()) return ground_top();
      if (kids.size() == 1) return kids[0];
      return ground_and(std::move(kids));
    }
    case GroundKind::SetOr: {
      std::vector<Ground> kids;
      for (const auto& k : g->kids) {
        Ground s = simplify_ground(k);
        if (ground_is_top(s)) return ground_top();
        if (s->kind != GroundKind::Bottom) kids.push_back(s);
      }
      if (kids.empty()) return ground_bottom();
      if (kids.size() == 1) return kids[0];
      return ground_or(std::move(kids));
    }
    case GroundKind::Implies: {
      Ground a = simplify_ground(g->kids[0]);
      Ground b = simplify_ground(g->kids[1]);
      if (a->kind == GroundKind::Bottom || ground_is_top(b)) return ground_top();
      if (ground_is_top(a)) return b;
      return ground_implies(a, b);
    }
  }
  return g;
}

std::string print_ground(const Ground& g) {
  switch (g->kind) {
    case GroundKind::Bottom:
      return "false";
    case GroundKind::Atom:
      return print_formula(g->atom);
    case GroundKind::SetAnd:
    case GroundKind::SetOr: {
      std::string s = g->kind == GroundKind::SetAnd ? "and{" : "or{";
      for (std::size_t i = 0; i < g->kids.size(); ++i) s += (i ? "; " : "") + print_ground(g->kids[i]);
      return s + "}";
    }
    case GroundKind::Implies:
      if (ground_is_top(g)) return "true";
      if (g->kids[1]->kind == GroundKind::Bottom) return "not " + print_ground(g->kids[0]);
      return "(" + print_ground(g->kids[0]) + " -> " + print_ground(g->kids[1]) + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Second-order characterization

std::vector<std::string> mirror_names(const Signature& sig, const std::vector<std::string>& c) {
  std::set<std::string> used;
  for (const auto& s : sig.user_sorts()) used.insert(s);
  for (const auto& f : sig.user_functions()) used.insert(f);
  for (const auto& p : sig.user_predicates()) used.insert(p);
  std::vector<std::string> out;
  for (const auto& name : c) out.push_back(fresh_name(name + "_hat", used));
  return out;
}

Signature with_mirrors(const Signature& sig, const std::vector<std::string>& c, const std::vector<std::string>& d) {
  if (c.size() != d.size()) throw ContractError("mirror list has a different length than the intensional list");
  Signature ext = sig;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (ext.has_symbol(d[i])) throw FreshNameError("mirror name '" + d[i] + "' is already declared");
    if (sig.has_function(c[i])) {
      FunctionInfo f = sig.function(c[i]);
      f.name = d[i];
      ext.add_function(f);
    } else {
      PredicateInfo p = sig.predicate(c[i]);
      p.name = d[i];
      ext.add_predicate(p);
    }
  }
  return ext;
}

namespace {

Formula star_rec(const Formula& f, const std::map<std::string, std::string>& ren, const std::set<std::string>& cs) {
  switch (f->kind) {
    case FormulaKind::Bottom:
      return f;
    case FormulaKind::Atom:
    case FormulaKind::Equal: {
      std::set<std::string> syms = constants_of(f);
      const bool touches = std::any_of(syms.begin(), syms.end(), [&](const std::string& s) { return cs.count(s); });
      if (!touches) return f;
      return make_and(rename_symbols(f, ren), f);
    }
    case FormulaKind::And:
      return make_and(star_rec(f->a, ren, cs), star_rec(f->b, ren, cs));
    case FormulaKind::Or:
      return make_or(star_rec(f->a, ren, cs), star_rec(f->b, ren, cs));
    case FormulaKind::Implies:
      return make_and(make_implies(star_rec(f->a, ren, cs), star_rec(f->b, ren, cs)), f);
    case FormulaKind::Forall:
      return make_forall(f->name, f->sort, star_rec(f->a, ren, cs));
    case FormulaKind::Exists:
      return make_exists(f->name, f->sort, star_rec(f->a, ren, cs));
    case FormulaKind::Choice:
      return star_rec(normalize(f), ren, cs);
  }
  return f;
}

VarList arg_vars(const std::vector<std::string>& sorts) {
  VarList vars;
  for (std::size_t i = 0; i < sorts.size(); ++i) vars.emplace_back("V" + std::to_string(i + 1), sorts[i]);
  return vars;
}

std::vector<Term> var_terms(const VarList& vars) {
  std::vector<Term> out;
  for (const auto& [n, s] : vars) out.push_back(make_var(n, s));
  return out;
}

}  // namespace

Formula star(const Formula& f, const std::vector<std::string>& c, const std::vector<std::string>& d,
             const Signature& sig) {
  if (c.size() != d.size()) throw ContractError("star: mirror list is not similar to the intensional list");
  std::map<std::string, std::string> ren;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!sig.has_symbol(c[i])) throw ContractError("star: '" + c[i] + "' is not declared");
    if (sig.has_symbol(d[i]) && (sig.has_function(c[i]) != sig.has_function(d[i])))
      throw ContractError("star: mirror '" + d[i] + "' is not similar to '" + c[i] + "'");
    ren[c[i]] = d[i];
  }
  return star_rec(f, ren, std::set<std::string>(c.begin(), c.end()));
}

Formula mirror_less(const std::vector<std::string>& c, const std::vector<std::string>& d, const Signature& sig) {
  std::vector<Formula> subset, equal;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sig.has_predicate(c[i])) {
      VarList vars = arg_vars(sig.predicate(c[i]).args);
      Formula orig = make_atom(c[i], var_terms(vars));
      Formula mirror = make_atom(d[i], var_terms(vars));
      subset.push_back(forall_all(vars, make_implies(mirror, orig)));
      equal.push_back(forall_all(vars, make_implies(orig, mirror)));
    } else {
      VarList vars = arg_vars(sig.function(c[i]).args);
      equal.push_back(
          forall_all(vars, make_equal(make_apply(d[i], var_terms(vars)), make_apply(c[i], var_terms(vars)))));
    }
  }
  return make_and(conjunction(subset), make_not(conjunction(equal)));
}

Formula choice_of(const std::vector<std::string>& c, const Signature& sig) {
  std::vector<Formula> parts;
  for (const auto& s : c) {
    if (sig.has_predicate(s)) {
      VarList vars = arg_vars(sig.predicate(s).args);
      parts.push_back(forall_all(vars, make_choice(make_atom(s, var_terms(vars)))));
    } else if (sig.has_function(s)) {
      const FunctionInfo& info = sig.function(s);
      VarList vars = arg_vars(info.args);
      const std::string y = "Y";
      Formula eq = make_equal(make_apply(s, var_terms(vars)), make_var(y, info.value));
      vars.emplace_back(y, info.value);
      parts.push_back(forall_all(vars, make_choice(eq)));
    } else {
      throw ContractError("choice: '" + s + "' is not declared");
    }
  }
  return conjunction(parts);
}

// ---------------------------------------------------------------------------
// Stable model checking

namespace {

void check_c(const Signature& sig, const std::vector<std::string>& c) {
  for (const auto& s : c)
    if (!sig.has_symbol(s)) throw ContractError("intensional constant '" + s + "' is not in the signature");
}

/// Precomputed state for repeated checks of one formula over one universe.
class Checker {
 public:
  Checker(const Formula& f, std::vector<std::string> c, const Universe& u) : f_(normalize(f)), c_(std::move(c)) {
    if (has_free_vars(f_)) throw ContractError("stable model check needs a sentence");
    check_c(u.signature(), c_);
  }

  bool check(const Interpretation& I, StableMethod m) {
    if (m == StableMethod::Reduct) return by_reduct(I, nullptr);
    if (m == StableMethod::SecondOrder) return by_second_order(I);
    const bool a = by_reduct(I, nullptr);
    const bool b = by_second_order(I);
    if (a != b)
      throw Error("stable model characterizations disagree (reduct: " + std::string(a ? "stable" : "not stable") +
                  ", second-order: " + (b ? "stable" : "not stable") + ")");
    return a;
  }

  bool by_reduct(const Interpretation& I, std::optional<Interpretation>* witness) {
    if (!satisfies(I, f_)) return false;
    Ground red = reduct(ground(f_, I), I);
    // Candidates J <^c I: predicate cells true in I may drop, false ones stay;
    // function cells range over the value sort with I's value first.
    std::vector<Cell> cells;
    const Universe& u = I.universe();
    const Signature& sig = u.signature();
    for (const auto& s : c_) {
      if (sig.has_predicate(s)) {
        const auto& t = I.predicate_table(s);
        for (std::size_t k = 0; k < t.size(); ++k)
          if (t[k]) cells.push_back(Cell{s, true, k, {}, {1, 0}});
      } else {
        const auto& t = I.function_table(s);
        const auto& values = u.extent(sig.function(s).value);
        for (std::size_t k = 0; k < t.size(); ++k) {
          Cell cell{s, false, k, {t[k]}, {}};
          for (const auto& v : values)
            if (!(v == t[k])) cell.options.push_back(v);
          if (cell.options.size() > 1) cells.push_back(std::move(cell));
        }
      }
    }
    Interpretation J = I;
    CellOdometer odo(std::move(cells));
    while (odo.next(J)) {
      if (eval_ground(J, red)) {
        if (witness) *witness = J;
        return false;
      }
    }
    return true;
  }

  bool by_second_order(const Interpretation& I) {
    if (!satisfies(I, f_)) return false;
    prepare_second_order(I.universe());
    Interpretation ext(ext_universe_);
    for (const auto& f : I.function_symbols()) {
      ext.init_symbol(f);
      ext.function_table(f) = I.function_table(f);
    }
    for (const auto& p : I.predicate_symbols()) {
      ext.init_symbol(p);
      ext.predicate_table(p) = I.predicate_table(p);
    }
    for (const auto& [key, v] : I.builtin_overrides()) ext.override_builtin(key.first, key.second, v);
    for (const auto& m : mirrors_) ext.init_symbol(m);
    CellOdometer odo(free_cells(*ext_universe_, mirrors_));
    odo.write(ext);
    do {
      if (satisfies(ext, so_formula_)) return false;
    } while (odo.next(ext));
    return true;
  }

 private:
  void prepare_second_order(const Universe& u) {
    if (ext_universe_ && base_universe_ == &u) return;
    const Signature& sig = u.signature();
    mirrors_ = mirror_names(sig, c_);
    Signature ext = with_mirrors(sig, c_, mirrors_);
    ext_universe_ = std::make_shared<Universe>(ext, open_extents(u));
    so_formula_ = make_and(mirror_less(c_, mirrors_, sig), star(f_, c_, mirrors_, sig));
    base_universe_ = &u;
  }

  Formula f_;
  std::vector<std::string> c_;
  std::vector<std::string> mirrors_;
  std::shared_ptr<const Universe> ext_universe_;
  const Universe* base_universe_ = nullptr;
  Formula so_formula_;
};

}  // namespace

bool check_stable(const Formula& f, const std::vector<std::string>& c, const Interpretation& I, StableMethod method) {
  if (!I.total()) throw ContractError("stable model check needs a total interpretation");
  Checker checker(f, c, I.universe());
  return checker.check(I, method);
}

StableVerdict explain_stable(const Formula& f, const std::vector<std::string>& c, const Interpretation& I) {
  Checker checker(f, c, I.universe());
  StableVerdict v;
  v.model = satisfies(I, normalize(f));
  if (!v.model) return v;
  std::optional<Interpretation> w;
  v.stable = checker.by_reduct(I, &w);
  v.witness = std::move(w);
  return v;
}

std::vector<Interpretation> stable_models(const Formula& f, const std::vector<std::string>& c,
                                          const Interpretation& fixed, const StableOptions& opts) {
  auto missing = fixed.missing_symbols();
  Interpretation base = fixed;
  for (const auto& s : missing) base.init_symbol(s);
  std::vector<Cell> cells = free_cells(fixed.universe(), missing);
  auto total = CellOdometer(cells).count();
  if (!total) throw DomainError("interpretation space is too large to enumerate");
  if (*total == 0) return {};

  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(std::min<std::uint64_t>(*total, 64))));
  std::vector<std::vector<Interpretation>> found(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](unsigned j) {
    try {
      const std::uint64_t lo = *total * j / jobs;
      const std::uint64_t hi = *total * (j + 1) / jobs;
      if (lo >= hi) return;
      Checker checker(f, c, fixed.universe());
      Interpretation cur = base;
      CellOdometer odo(cells);
      odo.seek(lo);
      odo.write(cur);
      for (std::uint64_t k = lo; k < hi; ++k) {
        if (checker.check(cur, opts.method)) found[j].push_back(cur);
        if (k + 1 < hi) odo.next(cur);
      }
    } catch (...) {
      errors[j] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(work, j);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Interpretation> out;
  for (auto& part : found)
    for (auto& I : part) out.push_back(std::move(I));
  return out;
}

std::vector<Interpretation> classical_models(const Formula& f, const Interpretation& fixed) {
  Formula g = normalize(f);
  std::vector<Interpretation> out;
  for_each_interpretation(fixed, [&](const Interpretation& I) {
    if (satisfies(I, g)) out.push_back(I);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Multi-valued propositional formulas

namespace {

void check_mvp(const Formula& f, const Interpretation& I) {
  const Signature& sig = I.signature();
  switch (f->kind) {
    case FormulaKind::Bottom:
      return;
    case FormulaKind::Equal: {
      const Term& l = f->terms[0];
      const Term& r = f->terms[1];
      if (l->kind != TermKind::Apply || !l->args.empty() || !sig.has_function(l->name) ||
          r->kind != TermKind::Literal)
        throw FragmentError("mvp atoms have the form c = v, got " + print_formula(f));
      if (!I.universe().contains(sig.function(l->name).value, r->value))
        throw DomainError("value " + r->value.to_string() + " is not in the domain of " + l->name);
      return;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      check_mvp(f->a, I);
      check_mvp(f->b, I);
      return;
    default:
      throw FragmentError("not an mvp-formula: " + print_formula(f));
  }
}

}  // namespace

Formula mvp_reduct(const Formula& f, const Interpretation& I) {
  if (!satisfies(I, f)) return make_bottom();
  switch (f->kind) {
    case FormulaKind::And:
      return make_and(mvp_reduct(f->a, I), mvp_reduct(f->b, I));
    case FormulaKind::Or:
      return make_or(mvp_reduct(f->a, I), mvp_reduct(f->b, I));
    case FormulaKind::Implies:
      return make_implies(mvp_reduct(f->a, I), mvp_reduct(f->b, I));
    default:
      return f;
  }
}

bool mvp_stable_check(const Formula& f, const Interpretation& I) {
  Formula g = normalize(f);
  check_mvp(g, I);
  Formula red = mvp_reduct(g, I);
  if (!satisfies(I, red)) return false;
  std::vector<std::string> constants;
  for (const auto& fn : I.signature().user_functions())
    if (I.signature().function(fn).args.empty()) constants.push_back(fn);
  Interpretation probe = I;
  for (const auto& s : constants) probe.erase_symbol(s);
  bool unique = true;
  for_each_interpretation(probe, [&](const Interpretation& J) {
    if (satisfies(J, red) && !(J == I)) {
      unique = false;
      return false;
    }
    return true;
  });
  return unique;
}

}  // namespace fsmkit
