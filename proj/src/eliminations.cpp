#include "fsmkit/eliminations.hpp"

#include "fsmkit/parser.hpp"
#include "fsmkit/transforms.hpp"

#include <algorithm>
#include <set>

namespace fsmkit {

namespace {

std::set<std::string> taken_names(const Signature& sig) {
  std::set<std::string> out;
  for (const auto& s : sig.user_sorts()) {
    out.insert(s);
    for (const auto& m : sig.sort(s).members)
      if (m.is_name()) out.insert(m.as_name());
  }
  for (const auto& s : {kIntSort, kRealSort, kBoolSort}) out.insert(s);
  for (const auto& f : sig.user_functions()) out.insert(f);
  for (const auto& p : sig.user_predicates()) out.insert(p);
  return out;
}

Signature copy_without(const Signature& sig, const std::string& drop) {
  Signature out;
  for (const auto& s : sig.user_sorts()) out.add_sort(sig.sort(s));
  for (const auto& [lo, hi] : sig.declared_subsorts()) out.add_subsort(lo, hi);
  for (const auto& f : sig.user_functions())
    if (f != drop) out.add_function(sig.function(f));
  for (const auto& p : sig.user_predicates())
    if (p != drop) out.add_predicate(sig.predicate(p));
  return out;
}

VarList numbered_vars(const std::vector<std::string>& sorts) {
  VarList out;
  for (std::size_t i = 0; i < sorts.size(); ++i) out.emplace_back("X" + std::to_string(i + 1), sorts[i]);
  return out;
}

std::vector<Term> as_terms(const VarList& vars) {
  std::vector<Term> out;
  for (const auto& [n, s] : vars) out.push_back(make_var(n, s));
  return out;
}

void copy_tables(const Interpretation& from, Interpretation& to, const std::string& skip) {
  for (const auto& f : from.function_symbols()) {
    if (f == skip) continue;
    to.init_symbol(f);
    to.function_table(f) = from.function_table(f);
  }
  for (const auto& p : from.predicate_symbols()) {
    if (p == skip) continue;
    to.init_symbol(p);
    to.predicate_table(p) = from.predicate_table(p);
  }
  for (const auto& [key, v] : from.builtin_overrides()) to.override_builtin(key.first, key.second, v);
}

}  // namespace

PredicateElimination eliminate_predicate(const Formula& f, const Signature& sig, const std::string& p,
                                         const std::string& fn, const std::optional<std::string>& value_sort) {
  if (!sig.has_predicate(p) || sig.predicate(p).background != Background::User)
    throw ContractError("'" + p + "' is not a declared predicate constant");
  auto taken = taken_names(sig);
  if (taken.count(fn)) throw FreshNameError("'" + fn + "' is already declared");
  taken.insert(fn);

  PredicateElimination e;
  e.predicate = p;
  e.function = fn;
  e.signature = copy_without(sig, p);
  if (value_sort) {
    if (!sig.has_sort(*value_sort)) throw ContractError("unknown sort '" + *value_sort + "'");
    e.value_sort = *value_sort;
  } else {
    e.value_sort = fresh_name("bit", taken);
    SortInfo s;
    s.name = e.value_sort;
    s.kind = SortKind::Open;
    e.signature.add_sort(s);
  }
  e.zero = fresh_name("zero", taken);
  e.one = fresh_name("one", taken);
  e.signature.add_function(FunctionInfo{e.zero, {}, e.value_sort, Background::User});
  e.signature.add_function(FunctionInfo{e.one, {}, e.value_sort, Background::User});
  const auto& args = sig.predicate(p).args;
  e.signature.add_function(FunctionInfo{fn, args, e.value_sort, Background::User});

  const Term zero = make_apply(e.zero, {});
  const Term one = make_apply(e.one, {});
  e.formula = map_atoms(f, [&](const Formula& a) {
    if (a->kind == FormulaKind::Atom && a->name == p) return make_equal(make_apply(fn, a->terms), one);
    return a;
  });
  VarList xs = numbered_vars(args);
  Term fx = make_apply(fn, as_terms(xs));
  e.functional = make_and(make_neq(zero, one),
                          make_not(make_not(forall_all(xs, make_or(make_equal(fx, zero), make_equal(fx, one))))));
  e.default_false = forall_all(xs, make_choice(make_equal(fx, zero)));
  return e;
}

FunctionElimination eliminate_function(const Formula& f, const Signature& sig, const std::string& fn,
                                       const std::string& p) {
  if (!sig.has_function(fn) || sig.function(fn).background != Background::User)
    throw ContractError("'" + fn + "' is not a declared function constant");
  if (auto bad = first_non_plain_atom(f, {fn}, sig))
    throw FragmentError("formula is not " + fn + "-plain: '" + print_formula(*bad) + "'");
  if (taken_names(sig).count(p)) throw FreshNameError("'" + p + "' is already declared");

  FunctionElimination e;
  e.function = fn;
  e.predicate = p;
  e.signature = copy_without(sig, fn);
  const FunctionInfo& info = sig.function(fn);
  std::vector<std::string> args = info.args;
  args.push_back(info.value);
  e.signature.add_predicate(PredicateInfo{p, args, Background::User});

  e.formula = map_atoms(normalize(f), [&](const Formula& a) {
    if (a->kind == FormulaKind::Equal && a->terms[0]->kind == TermKind::Apply && a->terms[0]->name == fn) {
      std::vector<Term> ts = a->terms[0]->args;
      ts.push_back(a->terms[1]);
      return make_atom(p, ts);
    }
    return a;
  });
  VarList xs = numbered_vars(info.args);
  std::vector<Term> xt = as_terms(xs);
  Term y = make_var("Y", info.value), z = make_var("Z", info.value);
  auto p_of = [&](const Term& v) {
    std::vector<Term> ts = xt;
    ts.push_back(v);
    return make_atom(p, ts);
  };
  VarList xyz = xs;
  xyz.emplace_back("Y", info.value);
  xyz.emplace_back("Z", info.value);
  e.uniqueness =
      forall_all(xyz, make_implies(make_and(make_and(p_of(y), p_of(z)), make_neq(y, z)), make_bottom()));
  e.existence = make_not(make_not(forall_all(xs, make_exists("Y", info.value, p_of(y)))));
  return e;
}

std::vector<std::string> replace_constant(std::vector<std::string> c, const std::string& from, const std::string& to) {
  std::replace(c.begin(), c.end(), from, to);
  return c;
}

Interpretation map_pred_to_func(const Interpretation& I, const PredicateElimination& e,
                                const std::vector<Value>& value_extent, const Value& zero, const Value& one) {
  if (zero == one) throw ContractError("the values for 0 and 1 must differ");
  UniverseSpec spec = open_extents(I.universe());
  if (!e.signature.sort(e.value_sort).fixed_extent() && !spec.count(e.value_sort)) spec[e.value_sort] = value_extent;
  auto u = std::make_shared<Universe>(e.signature, spec);
  Interpretation J(u);
  copy_tables(I, J, e.predicate);
  J.set_function(e.zero, {}, zero);
  J.set_function(e.one, {}, one);
  J.init_symbol(e.function);
  const auto& p = I.predicate_table(e.predicate);
  auto& f = J.function_table(e.function);
  for (std::size_t k = 0; k < p.size(); ++k) f[k] = p[k] ? one : zero;
  return J;
}

Interpretation map_func_to_pred(const Interpretation& I, const FunctionElimination& e) {
  auto u = std::make_shared<Universe>(e.signature, open_extents(I.universe()));
  Interpretation J(u);
  copy_tables(I, J, e.function);
  J.init_symbol(e.predicate);
  const auto& info = I.signature().function(e.function);
  const auto& table = I.function_table(e.function);
  for (std::size_t k = 0; k < table.size(); ++k) {
    auto args = I.universe().args_of(info.args, k);
    args.push_back(table[k]);
    J.set_predicate(e.predicate, args, true);
  }
  return J;
}

}  // namespace fsmkit
