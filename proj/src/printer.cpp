#include "fsmkit/parser.hpp"

#include <sstream>

namespace fsmkit {

namespace {

// Term precedence: 1 sum, 2 product, 3 primary.
int term_prec(const Term& t) {
  if (t->kind == TermKind::Apply && is_arith_builtin(t->name) && t->args.size() == 2)
    return (t->name == "+" || t->name == "-") ? 1 : 2;
  return 3;
}

std::string term_at(const Term& t, int ctx) {
  std::string s = print_term(t);
  return term_prec(t) < ctx ? "(" + s + ")" : s;
}

// Formula precedence: 1 iff, 2 implication, 3 or, 4 and, 5 not, 6 primary.
int formula_prec(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::And:
      return is_iff(f) ? 1 : 4;
    case FormulaKind::Or:
      return 3;
    case FormulaKind::Implies:
      if (is_top(f)) return 6;
      if (is_negation(f)) return f->a->kind == FormulaKind::Equal ? 6 : 5;
      return 2;
    default:
      return 6;
  }
}

std::string formula_at(const Formula& f, int ctx) {
  std::string s = print_formula(f);
  return formula_prec(f) < ctx ? "(" + s + ")" : s;
}

std::string args_text(const std::vector<Term>& args) {
  std::string s = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ", ";
    s += print_term(args[i]);
  }
  return s + ")";
}

std::string value_text(const Value& v) { return v.to_string(); }

}  // namespace

std::string print_term(const Term& t) {
  switch (t->kind) {
    case TermKind::Variable:
      return t->name;
    case TermKind::Literal:
      return value_text(t->value);
    case TermKind::Apply:
      if (is_arith_builtin(t->name) && t->args.size() == 2) {
        const int p = term_prec(t);
        return term_at(t->args[0], p) + " " + t->name + " " + term_at(t->args[1], p + 1);
      }
      if (t->args.empty()) return t->name;
      return t->name + args_text(t->args);
  }
  return {};
}

std::string print_formula(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Bottom:
      return "false";
    case FormulaKind::Atom:
      if (is_compare_builtin(f->name) && f->terms.size() == 2)
        return print_term(f->terms[0]) + " " + f->name + " " + print_term(f->terms[1]);
      if (f->terms.empty()) return f->name;
      return f->name + args_text(f->terms);
    case FormulaKind::Equal:
      return print_term(f->terms[0]) + " = " + print_term(f->terms[1]);
    case FormulaKind::And:
      if (is_iff(f)) return formula_at(f->a->a, 1) + " <-> " + formula_at(f->a->b, 2);
      return formula_at(f->a, 4) + " & " + formula_at(f->b, 5);
    case FormulaKind::Or:
      return formula_at(f->a, 3) + " | " + formula_at(f->b, 4);
    case FormulaKind::Implies:
      if (is_top(f)) return "true";
      if (is_negation(f)) {
        if (f->a->kind == FormulaKind::Equal)
          return print_term(f->a->terms[0]) + " != " + print_term(f->a->terms[1]);
        return "not " + formula_at(f->a, 5);
      }
      return formula_at(f->a, 3) + " -> " + formula_at(f->b, 2);
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return std::string(f->kind == FormulaKind::Forall ? "forall " : "exists ") + f->name + " : " + f->sort + " (" +
             print_formula(f->a) + ")";
    case FormulaKind::Choice:
      return "{ " + print_formula(f->a) + " }";
  }
  return {};
}

std::string print_rule(const Rule& r) {
  if (r.head->kind == FormulaKind::Bottom && r.body) return ":- " + print_formula(r.body) + ".";
  std::string s = print_formula(r.head);
  if (r.body) s += " :- " + print_formula(r.body);
  return s + ".";
}

std::string print_declarations(const Signature& sig) {
  std::ostringstream out;
  for (const auto& name : sig.user_sorts()) {
    const SortInfo& s = sig.sort(name);
    out << "sort " << name;
    if (s.kind == SortKind::Range) out << " = " << s.lo << ".." << s.hi;
    if (s.kind == SortKind::Enumerated) {
      out << " = {";
      for (std::size_t i = 0; i < s.members.size(); ++i) out << (i ? ", " : "") << s.members[i].to_string();
      out << "}";
    }
    out << ".\n";
  }
  for (const auto& [lo, hi] : sig.declared_subsorts()) out << "sort " << lo << " < " << hi << ".\n";
  for (const auto& name : sig.user_functions()) {
    const FunctionInfo& f = sig.function(name);
    if (f.args.empty()) {
      out << "object " << name << " : " << f.value << ".\n";
      continue;
    }
    out << "func " << name << " : ";
    for (std::size_t i = 0; i < f.args.size(); ++i) out << (i ? " * " : "") << f.args[i];
    out << " -> " << f.value << ".\n";
  }
  for (const auto& name : sig.user_predicates()) {
    const PredicateInfo& p = sig.predicate(name);
    out << "pred " << name;
    if (!p.args.empty()) {
      out << " : ";
      for (std::size_t i = 0; i < p.args.size(); ++i) out << (i ? " * " : "") << p.args[i];
    }
    out << ".\n";
  }
  return out.str();
}

std::string print_program(const Program& p) {
  std::ostringstream out;
  out << print_declarations(p.signature);
  if (!p.intensional.empty()) {
    out << "intensional ";
    for (std::size_t i = 0; i < p.intensional.size(); ++i) out << (i ? ", " : "") << p.intensional[i];
    out << ".\n";
  }
  for (const auto& [name, sort] : p.variables) out << "var " << name << " : " << sort << ".\n";
  for (const auto& r : p.rules) out << print_rule(r) << "\n";
  return out.str();
}

}  // namespace fsmkit
