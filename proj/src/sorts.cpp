#include "fsmkit/sorts.hpp"

#include <set>

namespace fsmkit {

namespace {

std::set<std::string> taken_names(const Signature& sig) {
  std::set<std::string> out{kIntSort, kRealSort, kBoolSort};
  for (const auto& s : sig.user_sorts()) {
    out.insert(s);
    for (const auto& m : sig.sort(s).members)
      if (m.is_name()) out.insert(m.as_name());
  }
  for (const auto& f : sig.user_functions()) out.insert(f);
  for (const auto& p : sig.user_predicates()) out.insert(p);
  return out;
}

void quantified_sorts(const Formula& f, std::set<std::string>& out) {
  if (!f) return;
  if (f->kind == FormulaKind::Forall || f->kind == FormulaKind::Exists) out.insert(f->sort);
  quantified_sorts(f->a, out);
  quantified_sorts(f->b, out);
}

bool has_names(const SortInfo& s) {
  for (const auto& m : s.members)
    if (m.is_name()) return true;
  return false;
}

struct Relativizer {
  const Desorted& d;

  Term term(const Term& t) const {
    switch (t->kind) {
      case TermKind::Variable:
        return make_var(t->name, d.universe_sort);
      case TermKind::Apply: {
        std::vector<Term> args;
        for (const auto& a : t->args) args.push_back(term(a));
        return make_apply(t->name, args);
      }
      case TermKind::Literal:
        return t;
    }
    return t;
  }

  Formula run(const Formula& f) const {
    switch (f->kind) {
      case FormulaKind::Bottom:
        return f;
      case FormulaKind::Atom: {
        std::vector<Term> args;
        for (const auto& a : f->terms) args.push_back(term(a));
        return make_atom(f->name, args);
      }
      case FormulaKind::Equal:
        return make_equal(term(f->terms[0]), term(f->terms[1]));
      case FormulaKind::And:
        return make_and(run(f->a), run(f->b));
      case FormulaKind::Or:
        return make_or(run(f->a), run(f->b));
      case FormulaKind::Implies:
        return make_implies(run(f->a), run(f->b));
      case FormulaKind::Choice:
        return make_choice(run(f->a));
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        Formula guard = make_atom(d.predicate_of.at(f->sort), {make_var(f->name, d.universe_sort)});
        Formula body = run(f->a);
        return f->kind == FormulaKind::Forall ? make_forall(f->name, d.universe_sort, make_implies(guard, body))
                                              : make_exists(f->name, d.universe_sort, make_and(guard, body));
      }
    }
    return f;
  }
};

VarList ys(std::size_t n, const std::string& sort) {
  VarList out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back("Y" + std::to_string(i + 1), sort);
  return out;
}

std::vector<Term> terms_of(const VarList& vars) {
  std::vector<Term> out;
  for (const auto& [n, s] : vars) out.push_back(make_var(n, s));
  return out;
}

}  // namespace

Formula Desorted::axioms(bool with_choice) const {
  std::vector<Formula> parts;
  for (const auto* family : {&subsort_axioms, &nonempty_axioms, &value_axioms})
    parts.insert(parts.end(), family->begin(), family->end());
  if (with_choice) {
    parts.insert(parts.end(), function_choice_axioms.begin(), function_choice_axioms.end());
    parts.insert(parts.end(), predicate_choice_axioms.begin(), predicate_choice_axioms.end());
  }
  return conjunction(parts);
}

Desorted to_unsorted(const Formula& f, const Signature& sig) {
  Desorted d;
  auto taken = taken_names(sig);
  d.universe_sort = fresh_name("u", taken);

  std::set<std::string> used;
  quantified_sorts(f, used);
  for (const auto& fn : sig.user_functions()) {
    for (const auto& s : sig.function(fn).args) used.insert(s);
    used.insert(sig.function(fn).value);
  }
  for (const auto& p : sig.user_predicates())
    for (const auto& s : sig.predicate(p).args) used.insert(s);
  for (const auto& s : sig.user_sorts()) d.sorts.push_back(s);
  for (const auto& s : {kIntSort, kRealSort, kBoolSort})
    if (used.count(s)) d.sorts.push_back(s);

  Signature& ns = d.signature;
  SortInfo u;
  u.name = d.universe_sort;
  u.kind = SortKind::Open;
  ns.add_sort(u);
  ns.add_subsort(kRealSort, d.universe_sort);
  if (used.count(kBoolSort)) ns.add_subsort(kBoolSort, d.universe_sort);
  // Sorts whose members are names stay declared so that those names remain
  // typed; nothing ranges over them.
  for (const auto& s : sig.user_sorts()) {
    const SortInfo& info = sig.sort(s);
    if (info.kind == SortKind::Enumerated && has_names(info)) {
      ns.add_sort(info);
      ns.add_subsort(s, d.universe_sort);
      taken.erase(s);
    }
  }
  for (const auto& s : d.sorts) {
    std::string name = fresh_name("sort_" + s, taken);
    d.predicate_of[s] = name;
    ns.add_predicate(PredicateInfo{name, {d.universe_sort}, Background::User});
  }
  for (const auto& fn : sig.user_functions()) {
    const auto& info = sig.function(fn);
    ns.add_function(
        FunctionInfo{fn, std::vector<std::string>(info.args.size(), d.universe_sort), d.universe_sort, Background::User});
  }
  for (const auto& p : sig.user_predicates())
    ns.add_predicate(
        PredicateInfo{p, std::vector<std::string>(sig.predicate(p).args.size(), d.universe_sort), Background::User});

  d.formula = Relativizer{d}.run(f);

  auto sort_atom = [&](const std::string& s, const Term& t) { return make_atom(d.predicate_of.at(s), {t}); };
  const Term y = make_var("Y", d.universe_sort);
  for (const auto& lo : d.sorts)
    for (const auto& hi : d.sorts)
      if (lo != hi && sig.is_subsort(lo, hi))
        d.subsort_axioms.push_back(make_forall("Y", d.universe_sort, make_implies(sort_atom(lo, y), sort_atom(hi, y))));
  for (const auto& s : d.sorts) d.nonempty_axioms.push_back(make_exists("Y", d.universe_sort, sort_atom(s, y)));

  for (const auto& fn : sig.user_functions()) {
    const auto& info = sig.function(fn);
    VarList vars = ys(info.args.size(), d.universe_sort);
    std::vector<Term> args = terms_of(vars);
    std::vector<Formula> in_sort, out_of_sort;
    for (std::size_t i = 0; i < args.size(); ++i) {
      in_sort.push_back(sort_atom(info.args[i], args[i]));
      out_of_sort.push_back(make_not(sort_atom(info.args[i], args[i])));
    }
    Term app = make_apply(fn, args);
    Formula value = sort_atom(info.value, app);
    d.value_axioms.push_back(forall_all(vars, in_sort.empty() ? value : make_implies(conjunction(in_sort), value)));
    VarList with_value = vars;
    with_value.emplace_back("Y" + std::to_string(vars.size() + 1), d.universe_sort);
    Term v = make_var(with_value.back().first, d.universe_sort);
    d.function_choice_axioms.push_back(
        forall_all(with_value, make_implies(disjunction(out_of_sort), make_choice(make_equal(app, v)))));
  }
  for (const auto& p : sig.user_predicates()) {
    const auto& info = sig.predicate(p);
    VarList vars = ys(info.args.size(), d.universe_sort);
    std::vector<Term> args = terms_of(vars);
    std::vector<Formula> out_of_sort;
    for (std::size_t i = 0; i < args.size(); ++i) out_of_sort.push_back(make_not(sort_atom(info.args[i], args[i])));
    d.predicate_choice_axioms.push_back(
        forall_all(vars, make_implies(disjunction(out_of_sort), make_choice(make_atom(p, args)))));
  }
  return d;
}

Interpretation interp_to_unsorted(const Interpretation& I, const Desorted& d, const std::optional<Value>& default_element) {
  const Universe& su = I.universe();
  const Signature& sig = I.signature();
  std::set<Value> merged;
  for (const auto& s : d.sorts) {
    const auto& e = su.extent(s);
    merged.insert(e.begin(), e.end());
  }
  UniverseSpec spec;
  spec[d.universe_sort] = std::vector<Value>(merged.begin(), merged.end());
  for (const auto& s : {kIntSort, kRealSort})
    if (d.predicate_of.count(s) && su.has_extent(s)) spec[s] = su.extent(s);
  auto u = std::make_shared<Universe>(d.signature, spec);
  const Value dflt = default_element ? *default_element : u->extent(d.universe_sort).front();
  if (!u->contains(d.universe_sort, dflt)) throw DomainError("default element " + dflt.to_string() + " is not in the universe");

  Interpretation L(u);
  for (const auto& s : d.sorts) {
    const auto& pred = d.predicate_of.at(s);
    L.init_symbol(pred);
    for (const auto& v : su.extent(s)) L.set_predicate(pred, {v}, true);
  }
  for (const auto& fn : sig.user_functions()) {
    if (!I.has(fn)) continue;
    const auto& info = sig.function(fn);
    const std::vector<std::string> usorts(info.args.size(), d.universe_sort);
    L.init_symbol(fn);
    auto& table = L.function_table(fn);
    for (std::size_t k = 0; k < table.size(); ++k) {
      auto args = u->args_of(usorts, k);
      auto v = su.cell_of(info.args, args) ? I.function_value(fn, args) : std::nullopt;
      table[k] = v ? *v : dflt;
    }
  }
  for (const auto& p : sig.user_predicates()) {
    if (!I.has(p)) continue;
    const auto& info = sig.predicate(p);
    const std::vector<std::string> usorts(info.args.size(), d.universe_sort);
    L.init_symbol(p);
    auto& table = L.predicate_table(p);
    for (std::size_t k = 0; k < table.size(); ++k) {
      auto args = u->args_of(usorts, k);
      table[k] = su.cell_of(info.args, args) && I.predicate_value(p, args);
    }
  }
  for (const auto& [key, v] : I.builtin_overrides()) L.override_builtin(key.first, key.second, v);
  return L;
}

namespace {

std::vector<std::vector<Value>> sorted_tuples(const Interpretation& L, const Desorted& d,
                                              const std::vector<std::string>& arg_sorts) {
  std::vector<std::vector<Value>> out{{}};
  for (const auto& s : arg_sorts) {
    std::vector<Value> members;
    for (const auto& v : L.universe().extent(d.universe_sort))
      if (L.predicate_value(d.predicate_of.at(s), {v})) members.push_back(v);
    std::vector<std::vector<Value>> next;
    for (const auto& t : out)
      for (const auto& v : members) {
        auto t2 = t;
        t2.push_back(v);
        next.push_back(std::move(t2));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

bool related(const Interpretation& L, const Interpretation& K, const Desorted& d, const Signature& original) {
  if (!(L.universe() == K.universe())) return false;
  for (const auto& s : d.sorts)
    if (!L.agrees_on(K, d.predicate_of.at(s))) return false;
  for (const auto& fn : original.user_functions())
    for (const auto& args : sorted_tuples(L, d, original.function(fn).args))
      if (L.function_value(fn, args) != K.function_value(fn, args)) return false;
  for (const auto& p : original.user_predicates())
    for (const auto& args : sorted_tuples(L, d, original.predicate(p).args))
      if (L.predicate_value(p, args) != K.predicate_value(p, args)) return false;
  return true;
}

Interpretation interp_from_unsorted(const Interpretation& L, const Desorted& d, const Signature& original) {
  UniverseSpec spec;
  std::map<std::string, std::vector<Value>> extents;
  for (const auto& s : d.sorts) {
    std::vector<Value> members;
    for (const auto& v : L.universe().extent(d.universe_sort))
      if (L.predicate_value(d.predicate_of.at(s), {v})) members.push_back(v);
    extents[s] = members;
    if (auto fixed = original.sort(s).fixed_extent()) {
      std::set<Value> a(fixed->begin(), fixed->end()), b(members.begin(), members.end());
      if (a != b) throw DomainError("sort predicate for '" + s + "' does not match the declared extent");
    } else {
      if (members.empty()) throw DomainError("sort '" + s + "' is empty");
      spec[s] = members;
    }
  }
  auto u = std::make_shared<Universe>(original, spec);
  for (const auto& [s, members] : extents)
    if (u->extent(s).size() != members.size())
      throw DomainError("sort '" + s + "' does not match its sort predicate");
  Interpretation I(u);
  for (const auto& fn : original.user_functions()) {
    if (!L.has(fn)) continue;
    I.init_symbol(fn);
    const auto& info = original.function(fn);
    for (std::size_t k = 0; k < u->cell_count(info.args); ++k) {
      auto args = u->args_of(info.args, k);
      I.set_function(fn, args, *L.function_value(fn, args));
    }
  }
  for (const auto& p : original.user_predicates()) {
    if (!L.has(p)) continue;
    I.init_symbol(p);
    const auto& info = original.predicate(p);
    for (std::size_t k = 0; k < u->cell_count(info.args); ++k) {
      auto args = u->args_of(info.args, k);
      I.set_predicate(p, args, L.predicate_value(p, args));
    }
  }
  return I;
}

}  // namespace fsmkit
