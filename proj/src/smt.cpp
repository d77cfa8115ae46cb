#include "fsmkit/smt.hpp"

#include "fsmkit/parser.hpp"
#include "fsmkit/transforms.hpp"
#include "sexpr.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fsmkit {

namespace {

bool background_sort(const std::string& s) { return s == kIntSort || s == kRealSort; }

// Connectives that drop true / false; each rewrite is valid in the logic of
// here-and-there, so stable models are preserved.
Formula mk_and(const Formula& a, const Formula& b) {
  if (a->kind == FormulaKind::Bottom || b->kind == FormulaKind::Bottom) return make_bottom();
  if (is_top(a)) return b;
  if (is_top(b) || same_formula(a, b)) return a;
  return make_and(a, b);
}
Formula mk_or(const Formula& a, const Formula& b) {
  if (is_top(a) || is_top(b)) return make_top();
  if (a->kind == FormulaKind::Bottom) return b;
  if (b->kind == FormulaKind::Bottom || same_formula(a, b)) return a;
  return make_or(a, b);
}
Formula mk_implies(const Formula& a, const Formula& b) {
  if (a->kind == FormulaKind::Bottom || is_top(b) || same_formula(a, b)) return make_top();
  if (is_top(a)) return b;
  return make_implies(a, b);
}
Formula mk_choice(const Formula& a) {
  if (a->kind == FormulaKind::Bottom || is_top(a)) return make_top();
  return make_choice(a);
}
bool occurs(const std::string& x, const Formula& f) {
  for (const auto& [n, s] : free_vars(f))
    if (n == x) return true;
  return false;
}
bool occurs(const std::string& x, const Term& t) {
  for (const auto& [n, s] : free_vars(t))
    if (n == x) return true;
  return false;
}
Formula mk_quant(FormulaKind k, const std::string& x, const std::string& sort, const Formula& body) {
  if (!occurs(x, body)) return body;
  return k == FormulaKind::Forall ? make_forall(x, sort, body) : make_exists(x, sort, body);
}
Formula truth(bool b) { return b ? make_top() : make_bottom(); }

Value arith(const std::string& op, const Value& a, const Value& b) {
  if (op == "+") return add(a, b);
  if (op == "-") return subtract(a, b);
  if (op == "*") return multiply(a, b);
  return divide(a, b);
}

bool compare(const std::string& op, const Value& a, const Value& b) {
  if (!a.is_number() || !b.is_number()) throw EvaluationError("comparison '" + op + "' applied to non-number");
  if (op == "<") return a < b;
  if (op == "<=") return a <= b;
  if (op == ">") return a > b;
  return a >= b;
}

bool literal(const Term& t) { return t->kind == TermKind::Literal; }

Term fold(const Term& t) {
  if (t->kind != TermKind::Apply) return t;
  std::vector<Term> args;
  bool ground = true;
  for (const auto& a : t->args) {
    args.push_back(fold(a));
    ground = ground && literal(args.back());
  }
  if (is_arith_builtin(t->name) && ground) return make_lit(arith(t->name, args[0]->value, args[1]->value));
  return make_apply(t->name, args);
}

// ---------------------------------------------------------------------------
// Instantiation

struct Instantiator {
  const Universe& u;
  const CellSignature& cells;
  std::vector<std::pair<std::string, std::optional<Value>>> env;

  const Signature& sig() const { return u.signature(); }

  // nullptr when a function is applied outside its domain.
  Term term(const Term& t) {
    switch (t->kind) {
      case TermKind::Literal:
        return t;
      case TermKind::Variable:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t->name) return it->second ? make_lit(*it->second) : t;
        return t;
      case TermKind::Apply:
        break;
    }
    std::vector<Term> args;
    bool ground = true;
    for (const auto& a : t->args) {
      Term x = term(a);
      if (!x) return nullptr;
      ground = ground && literal(x);
      args.push_back(x);
    }
    if (is_arith_builtin(t->name)) {
      if (ground) return make_lit(arith(t->name, args[0]->value, args[1]->value));
      return make_apply(t->name, args);
    }
    return cell(t->name, sig().function(t->name).args, args, print_term(t), [](const std::string& n) {
      return make_apply(n, {});
    });
  }

  template <class Make>
  auto cell(const std::string& symbol, const std::vector<std::string>& arg_sorts, const std::vector<Term>& args,
            const std::string& shown, Make make) -> decltype(make(std::string{})) {
    std::vector<Value> vals;
    for (const auto& a : args) {
      if (!literal(a)) throw FragmentError("argument of " + symbol + " is not fixed after expansion in " + shown);
      vals.push_back(a->value);
    }
    if (!u.cell_of(arg_sorts, vals)) return nullptr;
    return make(cells.name_of.at({symbol, vals}));
  }

  // Equality between a finite-valued cell and a value outside its sort.
  bool impossible(const Term& l, const Term& r) const {
    if (l->kind != TermKind::Apply || !literal(r) || !cells.signature.has_function(l->name)) return false;
    const std::string& s = cells.signature.function(l->name).value;
    return !background_sort(s) && u.has_extent(s) && !u.contains(s, r->value);
  }

  // Innermost finite-valued user application sitting inside an argument of
  // a user symbol.
  Term nested(const Term& t, bool inside) const {
    if (t->kind != TermKind::Apply) return nullptr;
    const bool user = !is_arith_builtin(t->name);
    for (const auto& a : t->args)
      if (Term n = nested(a, inside || user)) return n;
    if (inside && user) {
      const std::string& s = sig().function(t->name).value;
      if (!background_sort(s) && u.has_extent(s)) return t;
    }
    return nullptr;
  }

  static Term replace(const Term& t, const Term& from, const Term& to) {
    if (same_term(t, from)) return to;
    if (t->kind != TermKind::Apply) return t;
    std::vector<Term> args;
    for (const auto& a : t->args) args.push_back(replace(a, from, to));
    return make_apply(t->name, args);
  }

  // A(s) becomes the disjunction of s = v & A(v) over the sort of s.
  Formula split(const Formula& f, const Term& s) {
    Formula acc = make_bottom();
    for (const auto& v : u.extent(sig().function(s->name).value)) {
      Formula eq = run(make_equal(s, make_lit(v)));
      if (eq->kind == FormulaKind::Bottom) continue;
      std::vector<Term> args;
      for (const auto& t : f->terms) args.push_back(replace(t, s, make_lit(v)));
      Formula inst = f->kind == FormulaKind::Atom ? make_atom(f->name, args) : make_equal(args[0], args[1]);
      acc = mk_or(acc, mk_and(eq, run(inst)));
    }
    return acc;
  }

  Term nested_in(const Formula& f) const {
    const bool inside = f->kind == FormulaKind::Atom && !is_compare_builtin(f->name);
    for (const auto& t : f->terms)
      if (Term n = nested(t, inside)) return n;
    return nullptr;
  }

  Formula run(const Formula& f) {
    if (f->kind == FormulaKind::Atom || f->kind == FormulaKind::Equal)
      if (Term s = nested_in(f)) return split(f, s);
    switch (f->kind) {
      case FormulaKind::Bottom:
        return f;
      case FormulaKind::Atom: {
        std::vector<Term> args;
        bool ground = true;
        for (const auto& t : f->terms) {
          Term x = term(t);
          if (!x) return make_bottom();
          ground = ground && literal(x);
          args.push_back(x);
        }
        if (is_compare_builtin(f->name)) {
          if (ground) return truth(compare(f->name, args[0]->value, args[1]->value));
          return make_atom(f->name, args);
        }
        Formula out = cell(f->name, sig().predicate(f->name).args, args, print_formula(f),
                           [](const std::string& n) { return make_atom(n, {}); });
        return out ? out : make_bottom();
      }
      case FormulaKind::Equal: {
        Term l = term(f->terms[0]);
        if (!l) return make_bottom();
        Term r = term(f->terms[1]);
        if (!r) return make_bottom();
        if (literal(l) && literal(r)) return truth(l->value == r->value);
        if (same_term(l, r)) return make_top();
        if (impossible(l, r) || impossible(r, l)) return make_bottom();
        return make_equal(l, r);
      }
      case FormulaKind::And: {
        Formula a = run(f->a);
        if (a->kind == FormulaKind::Bottom) return a;
        return mk_and(a, run(f->b));
      }
      case FormulaKind::Or: {
        Formula a = run(f->a);
        if (is_top(a)) return a;
        return mk_or(a, run(f->b));
      }
      case FormulaKind::Implies: {
        Formula a = run(f->a);
        if (a->kind == FormulaKind::Bottom) return make_top();
        return mk_implies(a, run(f->b));
      }
      case FormulaKind::Choice:
        return mk_choice(run(f->a));
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        if (background_sort(f->sort)) {
          env.emplace_back(f->name, std::nullopt);
          Formula body = run(f->a);
          env.pop_back();
          return mk_quant(f->kind, f->name, f->sort, body);
        }
        const bool all = f->kind == FormulaKind::Forall;
        Formula acc = all ? make_top() : make_bottom();
        for (const auto& v : u.extent(f->sort)) {
          env.emplace_back(f->name, v);
          Formula part = run(f->a);
          env.pop_back();
          acc = all ? mk_and(acc, part) : mk_or(acc, part);
          if (all ? acc->kind == FormulaKind::Bottom : is_top(acc)) break;
        }
        return acc;
      }
    }
    return f;
  }
};

// ---------------------------------------------------------------------------
// Simplification

struct Simplifier {
  bool classical;

  Formula run(const Formula& f) {
    switch (f->kind) {
      case FormulaKind::Bottom:
        return f;
      case FormulaKind::Atom: {
        std::vector<Term> args;
        bool ground = true;
        for (const auto& t : f->terms) {
          args.push_back(fold(t));
          ground = ground && literal(args.back());
        }
        if (is_compare_builtin(f->name) && ground) return truth(compare(f->name, args[0]->value, args[1]->value));
        return make_atom(f->name, args);
      }
      case FormulaKind::Equal: {
        Term l = fold(f->terms[0]), r = fold(f->terms[1]);
        if (literal(l) && literal(r)) return truth(l->value == r->value);
        if (same_term(l, r)) return make_top();
        return make_equal(l, r);
      }
      case FormulaKind::And:
        return mk_and(run(f->a), run(f->b));
      case FormulaKind::Or:
        return mk_or(run(f->a), run(f->b));
      case FormulaKind::Implies: {
        Formula a = run(f->a), b = run(f->b);
        if (classical && b->kind == FormulaKind::Bottom && is_negation(a)) return a->a;
        return mk_implies(a, b);
      }
      case FormulaKind::Choice:
        return classical ? make_top() : mk_choice(run(f->a));
      case FormulaKind::Forall:
      case FormulaKind::Exists:
        return mk_quant(f->kind, f->name, f->sort, run(f->a));
    }
    return f;
  }
};

// ---------------------------------------------------------------------------
// Guarded quantifier elimination

struct Eliminator {
  const Signature& sig;

  std::optional<std::pair<std::size_t, Term>> guard(const std::string& x, const std::string& sort,
                                                    const std::vector<Formula>& cs) const {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const Formula& c = cs[i];
      if (c->kind != FormulaKind::Equal) continue;
      for (int side = 0; side < 2; ++side) {
        const Term& v = c->terms[side];
        const Term& t = c->terms[1 - side];
        if (v->kind == TermKind::Variable && v->name == x && !occurs(x, t) && sig.is_subsort(sort_of(t, sig), sort))
          return std::make_pair(i, t);
      }
    }
    return std::nullopt;
  }

  static std::vector<Formula> without(std::vector<Formula> cs, std::size_t i) {
    cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(i));
    return cs;
  }

  Formula simplified(const Formula& f) const { return Simplifier{true}.run(f); }

  Formula exists(const std::string& x, const std::string& sort, const Formula& g) {
    if (!occurs(x, g)) return g;
    if (g->kind == FormulaKind::Or) return mk_or(exists(x, sort, g->a), exists(x, sort, g->b));
    if (g->kind == FormulaKind::Exists && g->name != x) {
      Formula inner = exists(x, sort, g->a);
      if (inner->kind == FormulaKind::Exists && inner->name == x) return make_exists(g->name, g->sort, inner);
      return exists(g->name, g->sort, inner);
    }
    auto cs = conjuncts(g);
    if (auto gd = guard(x, sort, cs)) return simplified(substitute(conjunction(without(cs, gd->first)), x, gd->second));
    return make_exists(x, sort, g);
  }

  Formula forall(const std::string& x, const std::string& sort, const Formula& g) {
    if (!occurs(x, g)) return g;
    if (g->kind == FormulaKind::And) return mk_and(forall(x, sort, g->a), forall(x, sort, g->b));
    if (g->kind == FormulaKind::Forall && g->name != x) return nested(x, sort, g->name, g->sort, g->a);
    if (g->kind != FormulaKind::Implies) return make_forall(x, sort, g);
    const Formula& a = g->a;
    const Formula& b = g->b;
    if (a->kind == FormulaKind::Or)
      return mk_and(forall(x, sort, make_implies(a->a, b)), forall(x, sort, make_implies(a->b, b)));
    auto cs = conjuncts(a);
    if (auto gd = guard(x, sort, cs))
      return simplified(substitute(make_implies(conjunction(without(cs, gd->first)), b), x, gd->second));
    // forall x (A & exists y H -> B) is forall x y (A & H -> B).
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (cs[i]->kind != FormulaKind::Exists || cs[i]->name == x) continue;
      std::string y = cs[i]->name;
      Formula body = cs[i]->a;
      std::set<std::string> used;
      collect_var_names(g, used);
      used.insert(x);
      bool clash = occurs(y, b);
      for (std::size_t j = 0; j < cs.size() && !clash; ++j) clash = j != i && occurs(y, cs[j]);
      if (clash) {
        std::string y2 = fresh_name(y, used);
        body = substitute(body, y, make_var(y2, cs[i]->sort));
        y = y2;
      }
      auto rest = cs;
      rest[i] = body;
      return nested(x, sort, y, cs[i]->sort, make_implies(conjunction(rest), b));
    }
    return make_forall(x, sort, g);
  }

  // forall x forall y body, eliminating x first and then y.
  Formula nested(const std::string& x, const std::string& sx, const std::string& y, const std::string& sy,
                 const Formula& body) {
    Formula inner = forall(x, sx, body);
    if (inner->kind == FormulaKind::Forall && inner->name == x) return make_forall(y, sy, inner);
    return forall(y, sy, inner);
  }

  Formula run(const Formula& f) {
    switch (f->kind) {
      case FormulaKind::And:
        return mk_and(run(f->a), run(f->b));
      case FormulaKind::Or:
        return mk_or(run(f->a), run(f->b));
      case FormulaKind::Implies:
        return mk_implies(run(f->a), run(f->b));
      case FormulaKind::Choice:
        return mk_choice(run(f->a));
      case FormulaKind::Forall:
        return background_sort(f->sort) ? forall(f->name, f->sort, run(f->a)) : make_forall(f->name, f->sort, run(f->a));
      case FormulaKind::Exists:
        return background_sort(f->sort) ? exists(f->name, f->sort, run(f->a)) : make_exists(f->name, f->sort, run(f->a));
      default:
        return f;
    }
  }
};

// ---------------------------------------------------------------------------
// Rendering

const std::set<std::string> kReserved = {
    "and", "or", "not", "=>", "xor", "=", "distinct", "ite", "true", "false", "+", "-", "*", "/", "<", "<=", ">",
    ">=", "div", "mod", "abs", "to_real", "to_int", "is_int", "forall", "exists", "let", "par", "_", "!", "as",
    "match", "Int", "Real", "Bool", "NUMERAL", "DECIMAL", "STRING", "BINARY", "HEXADECIMAL"};

bool simple_symbol(const std::string& s) {
  static const std::string extra = "~!@$%^&*_-+=<>.?/";
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0])) || kReserved.count(s)) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && extra.find(c) == std::string::npos) return false;
  return true;
}

std::string smt_symbol(const std::string& s) {
  if (simple_symbol(s)) return s;
  if (s.find('|') != std::string::npos || s.find('\\') != std::string::npos)
    throw FragmentError("name '" + s + "' cannot be written as an SMT-LIB symbol");
  return "|" + s + "|";
}

std::string unquote(const std::string& s) {
  return s.size() >= 2 && s.front() == '|' && s.back() == '|' ? s.substr(1, s.size() - 2) : s;
}

std::string numeral(const mpz_class& z, bool real) {
  std::string digits = mpz_class(abs(z)).get_str() + (real ? ".0" : "");
  return sgn(z) < 0 ? "(- " + digits + ")" : digits;
}

struct Rendered {
  std::string text;
  std::string sort;  // Int, Real, Bool
  bool constant = false;
  bool numeral = false;
};

struct Renderer {
  const SmtScript& s;
  std::map<std::string, const SmtDeclaration*> decl_of;
  std::map<Value, std::size_t> code_of;
  std::vector<std::pair<std::string, std::string>> bound;
  bool uses_int = false, uses_real = false, nonlinear = false, quantified = false;

  explicit Renderer(const SmtScript& script) : s(script) {
    for (const auto& d : s.declarations) {
      decl_of[d.cell] = &d;
      note(d.sort);
    }
    for (std::size_t i = 0; i < s.name_codes.size(); ++i) code_of[s.name_codes[i]] = i;
  }

  void note(const std::string& sort) {
    if (sort == "Int") uses_int = true;
    if (sort == "Real") uses_real = true;
  }

  std::string value(const Value& v, const std::string& as) const {
    if (v.is_boolean()) return v.as_name();
    if (v.is_name()) {
      auto it = code_of.find(v);
      if (it == code_of.end()) throw ContractError("no code for name " + v.as_name());
      return std::to_string(it->second);
    }
    Rational q = v.as_rational();
    if (q.get_den() == 1) return numeral(q.get_num(), as == "Real");
    std::string body = "(/ " + mpz_class(abs(q.get_num())).get_str() + ".0 " + q.get_den().get_str() + ".0)";
    return sgn(q) < 0 ? "(- " + body + ")" : body;
  }

  Rendered coerce(Rendered r, const std::string& to) const {
    if (r.sort == to) return r;
    if (r.sort != "Int" || to != "Real") throw ContractError("cannot use " + r.sort + " term " + r.text + " as " + to);
    if (r.numeral) {
      auto close = r.text.find(')');
      r.text = close == std::string::npos ? r.text + ".0" : r.text.substr(0, close) + ".0)";
    } else {
      r.text = "(to_real " + r.text + ")";
    }
    r.sort = "Real";
    return r;
  }

  std::pair<Rendered, Rendered> unify(Rendered a, Rendered b) const {
    if (a.sort != b.sort && (a.sort == "Real" || b.sort == "Real")) return {coerce(a, "Real"), coerce(b, "Real")};
    return {a, b};
  }

  static std::string sort_of_var(const std::string& s) {
    if (s == kIntSort) return "Int";
    if (s == kRealSort) return "Real";
    throw ContractError("variable of sort " + s + " left after expansion");
  }

  Rendered term(const Term& t) {
    switch (t->kind) {
      case TermKind::Literal: {
        const Value& v = t->value;
        Rendered r;
        r.constant = true;
        r.numeral = !v.is_boolean();
        r.sort = v.is_boolean() ? "Bool" : (v.is_number() && !v.is_integer()) ? "Real" : "Int";
        r.text = value(v, r.sort);
        if (r.sort == "Real") note(r.sort);
        return r;
      }
      case TermKind::Variable:
        for (auto it = bound.rbegin(); it != bound.rend(); ++it)
          if (it->first == t->name) return {smt_symbol(t->name), it->second};
        throw ContractError("free variable " + t->name + " in an SMT assertion");
      case TermKind::Apply:
        break;
    }
    if (t->args.empty()) {
      auto it = decl_of.find(t->name);
      if (it == decl_of.end()) throw ContractError("undeclared constant " + t->name);
      return {it->second->symbol, it->second->sort};
    }
    if (!is_arith_builtin(t->name)) throw ContractError("application of " + t->name + " left after expansion");
    Rendered a = term(t->args[0]), b = term(t->args[1]);
    std::string sort = (a.sort == "Real" || b.sort == "Real" || t->name == "/") ? "Real" : "Int";
    a = coerce(a, sort);
    b = coerce(b, sort);
    if ((t->name == "*" && !a.constant && !b.constant) || (t->name == "/" && !b.constant)) nonlinear = true;
    note(sort);
    Rendered r{"(" + t->name + " " + a.text + " " + b.text + ")", sort};
    r.constant = a.constant && b.constant;
    return r;
  }

  std::string formula(const Formula& f) {
    switch (f->kind) {
      case FormulaKind::Bottom:
        return "false";
      case FormulaKind::Atom: {
        if (f->terms.empty()) {
          auto it = decl_of.find(f->name);
          if (it == decl_of.end()) throw ContractError("undeclared constant " + f->name);
          return it->second->symbol;
        }
        auto [a, b] = unify(term(f->terms[0]), term(f->terms[1]));
        return "(" + f->name + " " + a.text + " " + b.text + ")";
      }
      case FormulaKind::Equal: {
        auto [a, b] = unify(term(f->terms[0]), term(f->terms[1]));
        return "(= " + a.text + " " + b.text + ")";
      }
      case FormulaKind::And: {
        if (is_iff(f)) return "(= " + formula(f->a->a) + " " + formula(f->a->b) + ")";
        std::string out = "(and";
        for (const auto& c : conjuncts(f)) out += " " + formula(c);
        return out + ")";
      }
      case FormulaKind::Or: {
        std::string out = "(or";
        for (const auto& d : disjuncts(f)) out += " " + formula(d);
        return out + ")";
      }
      case FormulaKind::Implies:
        if (is_top(f)) return "true";
        if (is_negation(f)) return "(not " + formula(f->a) + ")";
        return "(=> " + formula(f->a) + " " + formula(f->b) + ")";
      case FormulaKind::Choice: {
        std::string a = formula(f->a);
        return "(or " + a + " (not " + a + "))";
      }
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        quantified = true;
        std::string vars;
        Formula body = f;
        std::size_t pushed = 0;
        while (body->kind == f->kind) {
          std::string sort = sort_of_var(body->sort);
          note(sort);
          if (!vars.empty()) vars += " ";
          vars += "(" + smt_symbol(body->name) + " " + sort + ")";
          bound.emplace_back(body->name, sort);
          ++pushed;
          body = body->a;
        }
        std::string out = std::string("(") + (f->kind == FormulaKind::Forall ? "forall" : "exists") + " (" + vars +
                          ") " + formula(body) + ")";
        bound.resize(bound.size() - pushed);
        return out;
      }
    }
    return "false";
  }
};

std::string smt_sort_of(const std::string& sort, const Universe& u, bool& name_coded) {
  name_coded = false;
  if (sort == kBoolSort) return "Bool";
  if (sort == kIntSort) return "Int";
  if (sort == kRealSort) return "Real";
  bool names = false, numbers = false, integral = true;
  for (const auto& v : u.extent(sort)) {
    if (v.is_name()) names = true;
    else {
      numbers = true;
      integral = integral && v.is_integer();
    }
  }
  if (names && numbers) throw FragmentError("sort " + sort + " mixes names and numbers; SMT output needs one or the other");
  if (names) {
    name_coded = true;
    return "Int";
  }
  return integral ? "Int" : "Real";
}

SmtScript emit_over_cells(const Formula& completed, const Universe& cell_universe, const CellSignature& cells,
                          const SmtOptions& opts) {
  CellSignature identity = make_cells(cell_universe);
  Formula g = Instantiator{cell_universe, identity, {}}.run(completed);
  g = Simplifier{true}.run(g);
  g = Eliminator{cells.signature}.run(g);
  g = Simplifier{true}.run(g);

  SmtScript s;
  s.cells = cells;
  s.get_model = opts.get_model;
  for (const auto& v : cell_universe.elements())
    if (v.is_name() && !v.is_boolean()) s.name_codes.push_back(v);
  for (const auto& name : cells.order) {
    const GroundCell& c = cells.cells.at(name);
    SmtDeclaration d;
    d.symbol = smt_symbol(name);
    d.cell = name;
    d.sort = c.predicate ? "Bool" : smt_sort_of(c.value_sort, cell_universe, d.name_coded);
    s.declarations.push_back(d);
    if (c.predicate || background_sort(c.value_sort) || c.value_sort == kBoolSort) continue;
    const SortInfo& info = cells.signature.sort(c.value_sort);
    const auto& ext = cell_universe.extent(c.value_sort);
    Term self = make_apply(name, {});
    if (info.kind == SortKind::Range && static_cast<std::int64_t>(ext.size()) == info.hi - info.lo + 1) {
      s.guards.push_back(make_and(make_atom("<=", {make_int(info.lo), self}), make_atom("<=", {self, make_int(info.hi)})));
    } else {
      std::vector<Formula> options;
      for (const auto& v : ext) options.push_back(make_equal(self, make_lit(v)));
      s.guards.push_back(disjunction(options));
    }
  }
  std::vector<Formula> pending{g};
  while (!pending.empty()) {
    Formula c = pending.back();
    pending.pop_back();
    if (c->kind == FormulaKind::And && !is_iff(c)) {
      pending.push_back(c->b);
      pending.push_back(c->a);
    } else if (!is_top(c) && std::none_of(s.assertions.begin(), s.assertions.end(),
                                          [&](const Formula& a) { return same_formula(a, c); })) {
      s.assertions.push_back(c);
    }
  }

  Renderer r(s);
  for (const auto& f : s.guards) r.formula(f);
  for (const auto& f : s.assertions) r.formula(f);
  if (opts.logic) {
    s.logic = *opts.logic;
  } else {
    std::string theory = r.uses_real ? (r.uses_int ? "NIRA" : "NRA") : (r.nonlinear ? "NIA" : "LIA");
    s.logic = (r.quantified ? "" : "QF_") + theory;
  }
  return s;
}

Formula cell_formula(const Formula& f, const Universe& u, const CellSignature& cells) {
  return Instantiator{u, cells, {}}.run(f);
}

}  // namespace

// ---------------------------------------------------------------------------

bool t_stable_check(const Formula& f, const std::vector<std::string>& c, const Interpretation& I,
                    const BackgroundTheory& bg, StableMethod method) {
  if (I.has_builtin_overrides()) {
    const auto& [key, v] = *I.builtin_overrides().begin();
    std::string args;
    for (const auto& a : key.second) args += (args.empty() ? "" : ", ") + a.to_string();
    throw NotTInterpretationError("not a T-interpretation: " + key.first + "(" + args + ") is reinterpreted as " +
                                  v.to_string());
  }
  for (const auto& [sort, values] : bg.slice) {
    std::vector<Value> want = values;
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end()), want.end());
    if (!I.universe().has_extent(sort) || I.universe().extent(sort) != want)
      throw NotTInterpretationError("universe of " + sort + " differs from the background slice");
  }
  const Signature& sig = I.signature();
  for (const auto& s : c)
    if ((sig.has_function(s) && sig.function(s).background != Background::User) ||
        (sig.has_predicate(s) && sig.predicate(s).background != Background::User))
      throw ContractError("background symbol " + s + " cannot be intensional");
  if (bg.kind == BackgroundKind::None) {
    for (const auto& s : constants_of(f))
      if (is_arith_builtin(s) || is_compare_builtin(s))
        throw ContractError("formula uses " + s + " but no background theory is declared");
  }
  return check_stable(f, c, I, method);
}

std::vector<std::string> CellSignature::cells_of(const std::vector<std::string>& symbols) const {
  std::set<std::string> want(symbols.begin(), symbols.end());
  std::vector<std::string> out;
  for (const auto& n : order)
    if (want.count(cells.at(n).symbol)) out.push_back(n);
  return out;
}

CellSignature make_cells(const Universe& u) {
  const Signature& sig = u.signature();
  CellSignature cs;
  for (const auto& s : sig.user_sorts()) cs.signature.add_sort(sig.sort(s));
  for (const auto& [lo, hi] : sig.declared_subsorts()) cs.signature.add_subsort(lo, hi);
  auto name = [](const std::string& f, const std::vector<Value>& args) {
    if (args.empty()) return f;
    std::string out = f + "(";
    for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + args[i].to_string();
    return out + ")";
  };
  auto record = [&](const std::string& n, GroundCell c) {
    cs.order.push_back(n);
    cs.name_of[{c.symbol, c.args}] = n;
    cs.cells.emplace(n, std::move(c));
  };
  for (const auto& f : sig.user_functions()) {
    const auto& info = sig.function(f);
    for (std::size_t k = 0; k < u.cell_count(info.args); ++k) {
      auto args = u.args_of(info.args, k);
      std::string n = name(f, args);
      cs.signature.add_function(FunctionInfo{n, {}, info.value, Background::User});
      record(n, GroundCell{f, args, info.value, false});
    }
  }
  for (const auto& p : sig.user_predicates()) {
    const auto& info = sig.predicate(p);
    for (std::size_t k = 0; k < u.cell_count(info.args); ++k) {
      auto args = u.args_of(info.args, k);
      std::string n = name(p, args);
      cs.signature.add_predicate(PredicateInfo{n, {}, Background::User});
      record(n, GroundCell{p, args, kBoolSort, true});
    }
  }
  return cs;
}

Formula instantiate(const Formula& f, const Universe& u, const CellSignature& cells) {
  return cell_formula(f, u, cells);
}

Formula simplify(const Formula& f, bool classical) { return Simplifier{classical}.run(f); }

Formula eliminate_guarded_quantifiers(const Formula& f, const Signature& sig) { return Eliminator{sig}.run(f); }

SmtScript emit_smtlib(const Formula& completed, const Universe& u, const SmtOptions& opts) {
  CellSignature cells = make_cells(u);
  Formula g = cell_formula(completed, u, cells);
  Universe cu(cells.signature, open_extents(u));
  return emit_over_cells(g, cu, cells, opts);
}

SmtScript smt_from_program(const Formula& f, const std::vector<std::string>& c, const Universe& u,
                           const SmtOptions& opts) {
  const Signature& sig = u.signature();
  Formula cnf = clark_normal_form(f, c, sig);
  CellSignature cells = make_cells(u);
  Formula g = cell_formula(cnf, u, cells);
  auto cc = cells.cells_of(c);
  Formula cnf_g = clark_normal_form(g, cc, cells.signature);
  if (auto cycle = dependency_graph(cnf_g, cc).find_cycle()) {
    std::string path;
    for (const auto& v : *cycle) path += (path.empty() ? "" : " -> ") + v;
    throw FragmentError("program is not tight on its ground constants: " + path);
  }
  Formula completed = complete(cnf_g, cc, cells.signature);
  Universe cu(cells.signature, open_extents(u));
  return emit_over_cells(completed, cu, cells, opts);
}

SmtScript smt_from_program(const Program& p, const Universe& u, const SmtOptions& opts) {
  return smt_from_program(fol_representation(p), p.intensional, u, opts);
}

std::string SmtScript::render(bool footer) const {
  Renderer r(*this);
  std::ostringstream out;
  out << "(set-logic " << logic << ")\n";
  for (const auto& d : declarations) out << "(declare-const " << d.symbol << " " << d.sort << ")\n";
  for (const auto& g : guards) out << "(assert " << r.formula(g) << ")\n";
  for (const auto& a : assertions) out << "(assert " << r.formula(a) << ")\n";
  if (footer) {
    out << "(check-sat)\n";
    if (get_model) out << "(get-model)\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Models

namespace {

std::optional<Rational> read_number(const sexpr::Node& n) {
  if (n.kind == sexpr::Node::Atom) return parse_rational(n.text);
  if (!n.is_list() || n.items.empty()) return std::nullopt;
  if (n.items[0].is("-") && n.items.size() == 2) {
    auto a = read_number(n.items[1]);
    if (a) return Rational(-*a);
  }
  if (n.items[0].is("/") && n.items.size() == 3) {
    auto a = read_number(n.items[1]), b = read_number(n.items[2]);
    if (a && b && *b != 0) return Rational(*a / *b);
  }
  return std::nullopt;
}

std::string shown(const sexpr::Node& n) {
  if (!n.is_list()) return n.text;
  std::string out = "(";
  for (std::size_t i = 0; i < n.items.size(); ++i) out += (i ? " " : "") + shown(n.items[i]);
  return out + ")";
}

void collect_definitions(const sexpr::Node& n, std::map<std::string, const sexpr::Node*>& out) {
  if (!n.is_list()) return;
  if (!n.items.empty() && n.items[0].is("define-fun")) {
    if (n.items.size() != 5 || !n.items[1].is_symbol() || !n.items[2].is_list() || !n.items[2].items.empty())
      throw DecodeError("unexpected model entry " + shown(n));
    out[n.items[1].text] = &n.items[4];
    return;
  }
  for (const auto& item : n.items) collect_definitions(item, out);
}

struct ExactEvaluator {
  const SmtModel& m;

  Value term(const Term& t) const {
    switch (t->kind) {
      case TermKind::Literal:
        return t->value;
      case TermKind::Variable:
        throw ContractError("assertion keeps a quantifier over " + t->name + "; exact evaluation needs ground formulas");
      case TermKind::Apply:
        break;
    }
    if (t->args.empty()) return lookup(t->name);
    return arith(t->name, term(t->args[0]), term(t->args[1]));
  }

  Value lookup(const std::string& cell) const {
    auto it = m.find(cell);
    if (it == m.end()) throw DecodeError("model has no value for " + cell);
    return it->second;
  }

  bool run(const Formula& f) const {
    switch (f->kind) {
      case FormulaKind::Bottom:
        return false;
      case FormulaKind::Atom:
        if (f->terms.empty()) return lookup(f->name) == Value::boolean(true);
        return compare(f->name, term(f->terms[0]), term(f->terms[1]));
      case FormulaKind::Equal:
        return term(f->terms[0]) == term(f->terms[1]);
      case FormulaKind::And:
        return run(f->a) && run(f->b);
      case FormulaKind::Or:
        return run(f->a) || run(f->b);
      case FormulaKind::Implies:
        return !run(f->a) || run(f->b);
      case FormulaKind::Choice:
        return true;
      case FormulaKind::Forall:
      case FormulaKind::Exists:
        throw ContractError("assertion keeps a quantifier over " + f->name + "; exact evaluation needs ground formulas");
    }
    return false;
  }
};

}  // namespace

SmtModel parse_smt_model(const std::string& text, const SmtScript& script) {
  auto nodes = sexpr::parse(text);
  std::map<std::string, const sexpr::Node*> defs;
  for (const auto& n : nodes) {
    if (n.is("unsat")) throw DecodeError("solver reported unsat; there is no model");
    if (n.is("unknown")) throw DecodeError("solver reported unknown; there is no model");
    collect_definitions(n, defs);
  }
  SmtModel m;
  for (const auto& d : script.declarations) {
    auto it = defs.find(unquote(d.symbol));
    if (it == defs.end()) throw DecodeError("model has no value for " + d.symbol);
    const sexpr::Node& v = *it->second;
    if (d.sort == "Bool") {
      if (!v.is("true") && !v.is("false")) throw DecodeError("expected a Boolean for " + d.symbol + ", got " + shown(v));
      m[d.cell] = Value::boolean(v.is("true"));
      continue;
    }
    auto q = read_number(v);
    if (!q) throw DecodeError("cannot read the value of " + d.symbol + " exactly: " + shown(v));
    if (d.sort == "Int" && q->get_den() != 1) throw DecodeError("non-integer value for " + d.symbol);
    if (d.name_coded) {
      if (*q < 0 || *q >= static_cast<long>(script.name_codes.size()))
        throw DecodeError("value " + q->get_str() + " of " + d.symbol + " encodes no name");
      m[d.cell] = script.name_codes[static_cast<std::size_t>(q->get_num().get_si())];
    } else {
      m[d.cell] = Value::number(*q);
    }
  }
  return m;
}

Interpretation model_to_interpretation(const SmtModel& m, const SmtScript& script, std::shared_ptr<const Universe> u) {
  Interpretation I(u);
  for (const auto& name : script.cells.order) {
    const GroundCell& c = script.cells.cells.at(name);
    auto it = m.find(name);
    if (it == m.end()) throw DecodeError("model has no value for " + name);
    if (c.predicate) {
      if (!I.has(c.symbol)) I.init_symbol(c.symbol);
      I.set_predicate(c.symbol, c.args, it->second == Value::boolean(true));
      continue;
    }
    if (!u->has_extent(c.value_sort) || !u->contains(c.value_sort, it->second))
      throw DecodeError("value " + it->second.to_string() + " of " + name + " lies outside " + c.value_sort);
    if (!I.has(c.symbol)) I.init_symbol(c.symbol);
    I.set_function(c.symbol, c.args, it->second);
  }
  return I;
}

Interpretation decode_model(const std::string& text, const SmtScript& script, std::shared_ptr<const Universe> u) {
  return model_to_interpretation(parse_smt_model(text, script), script, std::move(u));
}

bool holds_exactly(const SmtScript& script, const SmtModel& m) {
  ExactEvaluator ev{m};
  for (const auto& g : script.guards)
    if (!ev.run(g)) return false;
  for (const auto& a : script.assertions)
    if (!ev.run(a)) return false;
  return true;
}

std::string blocking_clause(const SmtScript& script, const SmtModel& m) {
  Renderer r(script);
  std::vector<std::string> eqs;
  for (const auto& d : script.declarations) {
    if (d.sort == "Real") continue;
    auto it = m.find(d.cell);
    if (it == m.end()) throw DecodeError("model has no value for " + d.symbol);
    eqs.push_back("(= " + d.symbol + " " + r.value(it->second, d.sort) + ")");
  }
  if (eqs.empty()) return "(assert false)";
  if (eqs.size() == 1) return "(assert (not " + eqs[0] + "))";
  std::string out = "(assert (not (and";
  for (const auto& e : eqs) out += " " + e;
  return out + ")))";
}

}  // namespace fsmkit
