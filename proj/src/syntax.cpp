#include "fsmkit/syntax.hpp"

#include <algorithm>

namespace fsmkit {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t str_hash(const std::string& s) { return std::hash<std::string>{}(s); }

}  // namespace

// ---------------------------------------------------------------------------
// Terms

Term make_var(const std::string& name, const std::string& sort) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Variable;
  n->name = name;
  n->sort = sort;
  n->hash = mix(mix(1, str_hash(name)), str_hash(sort));
  return n;
}

Term make_apply(const std::string& fn, std::vector<Term> args) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Apply;
  n->name = fn;
  std::size_t h = mix(2, str_hash(fn));
  for (const auto& a : args) h = mix(h, a->hash);
  n->args = std::move(args);
  n->hash = h;
  return n;
}

Term make_lit(const Value& v) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Literal;
  n->value = v;
  n->hash = mix(3, v.hash());
  return n;
}

bool same_term(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Variable:
      return a->name == b->name && a->sort == b->sort;
    case TermKind::Literal:
      return a->value == b->value;
    case TermKind::Apply:
      if (a->name != b->name || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!same_term(a->args[i], b->args[i])) return false;
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Formulas

namespace {

std::shared_ptr<FormulaNode> node(FormulaKind k) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  return n;
}

Formula finish(std::shared_ptr<FormulaNode> n) {
  std::size_t h = mix(17, static_cast<std::size_t>(n->kind));
  h = mix(h, str_hash(n->name));
  h = mix(h, str_hash(n->sort));
  for (const auto& t : n->terms) h = mix(h, t->hash);
  if (n->a) h = mix(h, n->a->hash);
  if (n->b) h = mix(h, n->b->hash);
  n->hash = h;
  return n;
}

}  // namespace

Formula make_bottom() {
  static const Formula bottom = finish(node(FormulaKind::Bottom));
  return bottom;
}

Formula make_top() {
  static const Formula top = make_implies(make_bottom(), make_bottom());
  return top;
}

Formula make_atom(const std::string& pred, std::vector<Term> args) {
  auto n = node(FormulaKind::Atom);
  n->name = pred;
  n->terms = std::move(args);
  return finish(std::move(n));
}

Formula make_equal(const Term& l, const Term& r) {
  auto n = node(FormulaKind::Equal);
  n->terms = {l, r};
  return finish(std::move(n));
}

Formula make_and(const Formula& a, const Formula& b) {
  auto n = node(FormulaKind::And);
  n->a = a;
  n->b = b;
  return finish(std::move(n));
}

Formula make_or(const Formula& a, const Formula& b) {
  auto n = node(FormulaKind::Or);
  n->a = a;
  n->b = b;
  return finish(std::move(n));
}

Formula make_implies(const Formula& a, const Formula& b) {
  auto n = node(FormulaKind::Implies);
  n->a = a;
  n->b = b;
  return finish(std::move(n));
}

Formula make_not(const Formula& a) { return make_implies(a, make_bottom()); }

Formula make_iff(const Formula& a, const Formula& b) {
  return make_and(make_implies(a, b), make_implies(b, a));
}

Formula make_forall(const std::string& var, const std::string& sort, const Formula& body) {
  auto n = node(FormulaKind::Forall);
  n->name = var;
  n->sort = sort;
  n->a = body;
  return finish(std::move(n));
}

Formula make_exists(const std::string& var, const std::string& sort, const Formula& body) {
  auto n = node(FormulaKind::Exists);
  n->name = var;
  n->sort = sort;
  n->a = body;
  return finish(std::move(n));
}

Formula make_choice(const Formula& a) {
  auto n = node(FormulaKind::Choice);
  n->a = a;
  return finish(std::move(n));
}

Formula conjunction(const std::vector<Formula>& parts) {
  if (parts.empty()) return make_top();
  Formula out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = make_and(out, parts[i]);
  return out;
}

Formula disjunction(const std::vector<Formula>& parts) {
  if (parts.empty()) return make_bottom();
  Formula out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out = make_or(out, parts[i]);
  return out;
}

Formula forall_all(const VarList& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = make_forall(it->first, it->second, body);
  return body;
}

Formula exists_all(const VarList& vars, Formula body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = make_exists(it->first, it->second, body);
  return body;
}

bool same_formula(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  if (a->name != b->name || a->sort != b->sort || a->terms.size() != b->terms.size()) return false;
  for (std::size_t i = 0; i < a->terms.size(); ++i)
    if (!same_term(a->terms[i], b->terms[i])) return false;
  if (static_cast<bool>(a->a) != static_cast<bool>(b->a) || static_cast<bool>(a->b) != static_cast<bool>(b->b))
    return false;
  if (a->a && !same_formula(a->a, b->a)) return false;
  if (a->b && !same_formula(a->b, b->b)) return false;
  return true;
}

bool is_negation(const Formula& f) {
  return f->kind == FormulaKind::Implies && f->b->kind == FormulaKind::Bottom && f->a->kind != FormulaKind::Bottom;
}

bool is_top(const Formula& f) {
  return f->kind == FormulaKind::Implies && f->a->kind == FormulaKind::Bottom && f->b->kind == FormulaKind::Bottom;
}

bool is_iff(const Formula& f) {
  return f->kind == FormulaKind::And && f->a->kind == FormulaKind::Implies && f->b->kind == FormulaKind::Implies &&
         same_formula(f->a->a, f->b->b) && same_formula(f->a->b, f->b->a) && !is_top(f->a);
}

namespace {

void flatten(const Formula& f, FormulaKind k, std::vector<Formula>& out) {
  if (f->kind == k) {
    flatten(f->a, k, out);
    flatten(f->b, k, out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  flatten(f, FormulaKind::And, out);
  return out;
}

std::vector<Formula> disjuncts(const Formula& f) {
  std::vector<Formula> out;
  flatten(f, FormulaKind::Or, out);
  return out;
}

// ---------------------------------------------------------------------------
// Variables

namespace {

void term_free(const Term& t, const std::set<std::string>& bound, VarList& out, std::set<std::string>& seen) {
  switch (t->kind) {
    case TermKind::Variable:
      if (!bound.count(t->name) && seen.insert(t->name).second) out.emplace_back(t->name, t->sort);
      break;
    case TermKind::Apply:
      for (const auto& a : t->args) term_free(a, bound, out, seen);
      break;
    case TermKind::Literal:
      break;
  }
}

void formula_free(const Formula& f, std::set<std::string>& bound, VarList& out, std::set<std::string>& seen) {
  switch (f->kind) {
    case FormulaKind::Bottom:
      break;
    case FormulaKind::Atom:
    case FormulaKind::Equal:
      for (const auto& t : f->terms) term_free(t, bound, out, seen);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      formula_free(f->a, bound, out, seen);
      formula_free(f->b, bound, out, seen);
      break;
    case FormulaKind::Choice:
      formula_free(f->a, bound, out, seen);
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      const bool fresh = bound.insert(f->name).second;
      formula_free(f->a, bound, out, seen);
      if (fresh) bound.erase(f->name);
      break;
    }
  }
}

}  // namespace

VarList free_vars(const Formula& f) {
  VarList out;
  std::set<std::string> bound, seen;
  formula_free(f, bound, out, seen);
  return out;
}

VarList free_vars(const Term& t) {
  VarList out;
  std::set<std::string> seen;
  term_free(t, {}, out, seen);
  return out;
}

bool has_free_vars(const Formula& f) { return !free_vars(f).empty(); }

namespace {

void term_var_names(const Term& t, std::set<std::string>& out) {
  if (t->kind == TermKind::Variable) out.insert(t->name);
  for (const auto& a : t->args) term_var_names(a, out);
}

}  // namespace

void collect_var_names(const Formula& f, std::set<std::string>& out) {
  if (f->kind == FormulaKind::Forall || f->kind == FormulaKind::Exists) out.insert(f->name);
  for (const auto& t : f->terms) term_var_names(t, out);
  if (f->a) collect_var_names(f->a, out);
  if (f->b) collect_var_names(f->b, out);
}

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
  if (used.insert(base).second) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (used.insert(cand).second) return cand;
  }
}

Term substitute(const Term& t, const std::string& var, const Term& by) {
  switch (t->kind) {
    case TermKind::Variable:
      return t->name == var ? by : t;
    case TermKind::Literal:
      return t;
    case TermKind::Apply: {
      std::vector<Term> args;
      bool changed = false;
      for (const auto& a : t->args) {
        args.push_back(substitute(a, var, by));
        changed = changed || args.back() != a;
      }
      return changed ? make_apply(t->name, std::move(args)) : t;
    }
  }
  return t;
}

Formula substitute(const Formula& f, const std::string& var, const Term& by) {
  switch (f->kind) {
    case FormulaKind::Bottom:
      return f;
    case FormulaKind::Atom: {
      std::vector<Term> args;
      for (const auto& a : f->terms) args.push_back(substitute(a, var, by));
      return make_atom(f->name, std::move(args));
    }
    case FormulaKind::Equal:
      return make_equal(substitute(f->terms[0], var, by), substitute(f->terms[1], var, by));
    case FormulaKind::And:
      return make_and(substitute(f->a, var, by), substitute(f->b, var, by));
    case FormulaKind::Or:
      return make_or(substitute(f->a, var, by), substitute(f->b, var, by));
    case FormulaKind::Implies:
      return make_implies(substitute(f->a, var, by), substitute(f->b, var, by));
    case FormulaKind::Choice:
      return make_choice(substitute(f->a, var, by));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (f->name == var) return f;
      std::string bound = f->name;
      Formula body = f->a;
      VarList by_vars = free_vars(by);
      bool captured = std::any_of(by_vars.begin(), by_vars.end(), [&](const auto& v) { return v.first == bound; });
      if (captured) {
        std::set<std::string> used;
        collect_var_names(f, used);
        for (const auto& v : by_vars) used.insert(v.first);
        used.insert(var);
        used.erase(bound);
        std::string renamed = fresh_name(bound, used);
        if (renamed == bound) renamed = fresh_name(bound + "_", used);
        body = substitute(body, bound, make_var(renamed, f->sort));
        bound = renamed;
      }
      body = substitute(body, var, by);
      return f->kind == FormulaKind::Forall ? make_forall(bound, f->sort, body) : make_exists(bound, f->sort, body);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Rewriting

Formula map_terms(const Formula& f, const std::function<Term(const Term&)>& fn) {
  switch (f->kind) {
    case FormulaKind::Bottom:
      return f;
    case FormulaKind::Atom: {
      std::vector<Term> args;
      for (const auto& a : f->terms) args.push_back(fn(a));
      return make_atom(f->name, std::move(args));
    }
    case FormulaKind::Equal:
      return make_equal(fn(f->terms[0]), fn(f->terms[1]));
    case FormulaKind::And:
      return make_and(map_terms(f->a, fn), map_terms(f->b, fn));
    case FormulaKind::Or:
      return make_or(map_terms(f->a, fn), map_terms(f->b, fn));
    case FormulaKind::Implies:
      return make_implies(map_terms(f->a, fn), map_terms(f->b, fn));
    case FormulaKind::Choice:
      return make_choice(map_terms(f->a, fn));
    case FormulaKind::Forall:
      return make_forall(f->name, f->sort, map_terms(f->a, fn));
    case FormulaKind::Exists:
      return make_exists(f->name, f->sort, map_terms(f->a, fn));
  }
  return f;
}

Formula map_atoms(const Formula& f, const std::function<Formula(const Formula&)>& fn) {
  switch (f->kind) {
    case FormulaKind::Bottom:
      return f;
    case FormulaKind::Atom:
    case FormulaKind::Equal:
      return fn(f);
    case FormulaKind::And:
      return make_and(map_atoms(f->a, fn), map_atoms(f->b, fn));
    case FormulaKind::Or:
      return make_or(map_atoms(f->a, fn), map_atoms(f->b, fn));
    case FormulaKind::Implies:
      return make_implies(map_atoms(f->a, fn), map_atoms(f->b, fn));
    case FormulaKind::Choice:
      return make_choice(map_atoms(f->a, fn));
    case FormulaKind::Forall:
      return make_forall(f->name, f->sort, map_atoms(f->a, fn));
    case FormulaKind::Exists:
      return make_exists(f->name, f->sort, map_atoms(f->a, fn));
  }
  return f;
}

Term rename_symbols(const Term& t, const std::map<std::string, std::string>& renaming) {
  if (t->kind != TermKind::Apply) return t;
  std::vector<Term> args;
  for (const auto& a : t->args) args.push_back(rename_symbols(a, renaming));
  auto it = renaming.find(t->name);
  return make_apply(it == renaming.end() ? t->name : it->second, std::move(args));
}

Formula rename_symbols(const Formula& f, const std::map<std::string, std::string>& renaming) {
  return map_atoms(f, [&](const Formula& atom) {
    std::vector<Term> args;
    for (const auto& a : atom->terms) args.push_back(rename_symbols(a, renaming));
    if (atom->kind == FormulaKind::Equal) return make_equal(args[0], args[1]);
    auto it = renaming.find(atom->name);
    return make_atom(it == renaming.end() ? atom->name : it->second, std::move(args));
  });
}

Formula normalize(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Bottom:
    case FormulaKind::Atom:
    case FormulaKind::Equal:
      return f;
    case FormulaKind::And:
      return make_and(normalize(f->a), normalize(f->b));
    case FormulaKind::Or:
      return make_or(normalize(f->a), normalize(f->b));
    case FormulaKind::Implies:
      return make_implies(normalize(f->a), normalize(f->b));
    case FormulaKind::Choice: {
      Formula inner = normalize(f->a);
      return make_or(inner, make_not(inner));
    }
    case FormulaKind::Forall:
      return make_forall(f->name, f->sort, normalize(f->a));
    case FormulaKind::Exists:
      return make_exists(f->name, f->sort, normalize(f->a));
  }
  return f;
}

namespace {

void term_constants(const Term& t, std::set<std::string>& out) {
  if (t->kind != TermKind::Apply) return;
  out.insert(t->name);
  for (const auto& a : t->args) term_constants(a, out);
}

void formula_constants(const Formula& f, std::set<std::string>& out) {
  if (f->kind == FormulaKind::Atom) out.insert(f->name);
  for (const auto& t : f->terms) term_constants(t, out);
  if (f->a) formula_constants(f->a, out);
  if (f->b) formula_constants(f->b, out);
}

}  // namespace

std::set<std::string> constants_of(const Formula& f) {
  std::set<std::string> out;
  formula_constants(f, out);
  return out;
}

std::set<std::string> constants_of(const Term& t) {
  std::set<std::string> out;
  term_constants(t, out);
  return out;
}

bool term_mentions(const Term& t, const std::set<std::string>& symbols) {
  if (t->kind != TermKind::Apply) return false;
  if (symbols.count(t->name)) return true;
  return std::any_of(t->args.begin(), t->args.end(), [&](const Term& a) { return term_mentions(a, symbols); });
}

// ---------------------------------------------------------------------------
// Sorting

std::string sort_of(const Term& t, const Signature& sig) {
  switch (t->kind) {
    case TermKind::Variable:
      if (!sig.has_sort(t->sort)) throw SortError("variable " + t->name + " has unknown sort '" + t->sort + "'", t->name);
      return t->sort;
    case TermKind::Literal:
      return sig.sort_of_value(t->value);
    case TermKind::Apply: {
      const FunctionInfo& fn = sig.function(t->name);
      if (fn.arity() != t->args.size())
        throw SortError(t->name + " expects " + std::to_string(fn.arity()) + " arguments, got " +
                            std::to_string(t->args.size()),
                        t->name);
      if (is_arith_builtin(t->name)) {
        bool all_int = true;
        for (const auto& a : t->args) {
          std::string s = sort_of(a, sig);
          if (!sig.numeric(s)) throw SortError("arithmetic on non-numeric sort '" + s + "'", t->name);
          all_int = all_int && sig.is_subsort(s, kIntSort);
        }
        return (all_int && t->name != "/") ? kIntSort : kRealSort;
      }
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        std::string s = sort_of(t->args[i], sig);
        if (!sig.compatible(s, fn.args[i]))
          throw SortError("argument " + std::to_string(i + 1) + " of " + t->name + " has sort '" + s +
                              "', expected '" + fn.args[i] + "'",
                          t->name);
      }
      return fn.value;
    }
  }
  return {};
}

void check_sorts(const Formula& f, const Signature& sig) {
  switch (f->kind) {
    case FormulaKind::Bottom:
      return;
    case FormulaKind::Atom: {
      const PredicateInfo& p = sig.predicate(f->name);
      if (p.arity() != f->terms.size())
        throw SortError(f->name + " expects " + std::to_string(p.arity()) + " arguments, got " +
                            std::to_string(f->terms.size()),
                        f->name);
      for (std::size_t i = 0; i < f->terms.size(); ++i) {
        std::string s = sort_of(f->terms[i], sig);
        if (!sig.compatible(s, p.args[i]))
          throw SortError("argument " + std::to_string(i + 1) + " of " + f->name + " has sort '" + s +
                              "', expected '" + p.args[i] + "'",
                          f->name);
      }
      return;
    }
    case FormulaKind::Equal: {
      std::string l = sort_of(f->terms[0], sig);
      std::string r = sort_of(f->terms[1], sig);
      if (!sig.compatible(l, r)) throw SortError("equality between sorts '" + l + "' and '" + r + "'", "=");
      return;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      if (!sig.has_sort(f->sort)) throw SortError("quantified variable " + f->name + " has unknown sort", f->sort);
      check_sorts(f->a, sig);
      return;
    default:
      if (f->a) check_sorts(f->a, sig);
      if (f->b) check_sorts(f->b, sig);
  }
}

// ---------------------------------------------------------------------------
// Polarity

Polarity Occurrence::polarity() const {
  if (antecedents == 0) return Polarity::StrictlyPositive;
  return antecedents % 2 == 0 ? Polarity::Positive : Polarity::Negative;
}

namespace {

void term_occ(const Term& t, int depth, bool negated, std::vector<Occurrence>& out) {
  if (t->kind != TermKind::Apply) return;
  out.push_back({t->name, depth, negated});
  for (const auto& a : t->args) term_occ(a, depth, negated, out);
}

void formula_occ(const Formula& f, int depth, bool negated, std::vector<Occurrence>& out) {
  switch (f->kind) {
    case FormulaKind::Bottom:
      return;
    case FormulaKind::Atom:
      out.push_back({f->name, depth, negated});
      for (const auto& t : f->terms) term_occ(t, depth, negated, out);
      return;
    case FormulaKind::Equal:
      for (const auto& t : f->terms) term_occ(t, depth, negated, out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      formula_occ(f->a, depth, negated, out);
      formula_occ(f->b, depth, negated, out);
      return;
    case FormulaKind::Implies:
      if (is_negation(f)) {
        formula_occ(f->a, depth + 1, true, out);
        return;
      }
      formula_occ(f->a, depth + 1, negated, out);
      formula_occ(f->b, depth, negated, out);
      return;
    case FormulaKind::Choice:
      formula_occ(f->a, depth, negated, out);
      formula_occ(f->a, depth + 1, true, out);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      formula_occ(f->a, depth, negated, out);
      return;
  }
}

}  // namespace

std::vector<Occurrence> occurrences(const Formula& f) {
  std::vector<Occurrence> out;
  formula_occ(f, 0, false, out);
  return out;
}

Polarity occurrence_polarity(const Formula& f, std::size_t index) {
  auto occ = occurrences(f);
  if (index >= occ.size()) throw ContractError("occurrence index out of range");
  return occ[index].polarity();
}

bool occurrence_negated(const Formula& f, std::size_t index) {
  auto occ = occurrences(f);
  if (index >= occ.size()) throw ContractError("occurrence index out of range");
  return occ[index].negated;
}

bool negative_on(const Formula& f, const std::vector<std::string>& c) {
  std::set<std::string> cs(c.begin(), c.end());
  for (const auto& o : occurrences(f))
    if (o.antecedents == 0 && cs.count(o.symbol)) return false;
  return true;
}

std::set<std::string> strictly_positive_symbols(const Formula& f) {
  std::set<std::string> out;
  for (const auto& o : occurrences(f))
    if (o.antecedents == 0) out.insert(o.symbol);
  return out;
}

// ---------------------------------------------------------------------------
// Rules and programs

Rule make_rule(Formula head, Formula body) {
  Rule r;
  r.kind = head->kind == FormulaKind::Bottom   ? RuleKind::Constraint
           : head->kind == FormulaKind::Choice ? RuleKind::Choice
                                               : RuleKind::Plain;
  r.head = std::move(head);
  r.body = std::move(body);
  return r;
}

std::vector<std::string> Program::intensional_predicates() const {
  std::vector<std::string> out;
  for (const auto& c : intensional)
    if (signature.has_predicate(c)) out.push_back(c);
  return out;
}

std::vector<std::string> Program::intensional_functions() const {
  std::vector<std::string> out;
  for (const auto& c : intensional)
    if (signature.has_function(c)) out.push_back(c);
  return out;
}

Formula rule_formula(const Rule& r) {
  VarList vars = free_vars(r.head);
  if (r.body) {
    std::set<std::string> seen;
    for (const auto& v : vars) seen.insert(v.first);
    for (const auto& v : free_vars(r.body))
      if (seen.insert(v.first).second) vars.push_back(v);
  }
  Formula core = r.body ? make_implies(r.body, r.head) : r.head;
  return forall_all(vars, core);
}

Formula fol_representation(const Program& p) {
  std::vector<Formula> parts;
  for (const auto& r : p.rules) parts.push_back(rule_formula(r));
  return conjunction(parts);
}

void check_intensional(const Signature& sig, const std::vector<std::string>& c) {
  std::set<std::string> seen;
  for (const auto& name : c) {
    if (!seen.insert(name).second) throw SortError("'" + name + "' listed twice as intensional", name);
    if (!sig.has_symbol(name)) throw SortError("intensional constant '" + name + "' is not declared", name);
    const bool builtin = sig.has_function(name) ? sig.function(name).background != Background::User
                                                : sig.predicate(name).background != Background::User;
    if (builtin) throw SortError("background symbol '" + name + "' cannot be intensional", name);
  }
}

}  // namespace fsmkit
