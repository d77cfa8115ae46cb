#pragma once

#include "fsmkit/error.hpp"
#include "fsmkit/signature.hpp"
#include "fsmkit/value.hpp"

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fsmkit {

// ---------------------------------------------------------------------------
// Terms

enum class TermKind { Variable, Apply, Literal };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

/// Immutable term node. `Literal` doubles as the object name of a universe
/// element in ground formulas.
struct TermNode {
  TermKind kind;
  std::string name;  // variable or function name
  std::string sort;  // variable sort
  std::vector<Term> args;
  Value value;  // literal payload
  std::size_t hash = 0;
};

Term make_var(const std::string& name, const std::string& sort);
Term make_apply(const std::string& fn, std::vector<Term> args);
Term make_lit(const Value& v);
inline Term make_int(std::int64_t v) { return make_lit(Value::integer(v)); }

bool same_term(const Term& a, const Term& b);

// ---------------------------------------------------------------------------
// Formulas

enum class FormulaKind { Bottom, Atom, Equal, And, Or, Implies, Forall, Exists, Choice };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

/// Immutable formula node. Negation is `Implies(F, Bottom)` and truth is
/// `Implies(Bottom, Bottom)`; the printer re-sugars both.
struct FormulaNode {
  FormulaKind kind;
  std::string name;  // predicate for Atom, variable for quantifiers
  std::string sort;  // quantified variable sort
  std::vector<Term> terms;  // Atom arguments or the two sides of Equal
  Formula a;  // And/Or/Implies left, quantifier body, choice argument
  Formula b;
  std::size_t hash = 0;
};

Formula make_bottom();
Formula make_top();
Formula make_atom(const std::string& pred, std::vector<Term> args);
Formula make_equal(const Term& l, const Term& r);
Formula make_and(const Formula& a, const Formula& b);
Formula make_or(const Formula& a, const Formula& b);
Formula make_implies(const Formula& a, const Formula& b);
Formula make_not(const Formula& a);
Formula make_iff(const Formula& a, const Formula& b);
Formula make_forall(const std::string& var, const std::string& sort, const Formula& body);
Formula make_exists(const std::string& var, const std::string& sort, const Formula& body);
Formula make_choice(const Formula& a);
inline Formula make_neq(const Term& l, const Term& r) { return make_not(make_equal(l, r)); }

/// Left-associated conjunction / disjunction; empty lists give true / false.
Formula conjunction(const std::vector<Formula>& parts);
Formula disjunction(const std::vector<Formula>& parts);
Formula forall_all(const std::vector<std::pair<std::string, std::string>>& vars, Formula body);
Formula exists_all(const std::vector<std::pair<std::string, std::string>>& vars, Formula body);

bool same_formula(const Formula& a, const Formula& b);

bool is_negation(const Formula& f);  // Implies(G, Bottom), excluding true
bool is_top(const Formula& f);
bool is_iff(const Formula& f);

/// Conjuncts of a left- or right-nested conjunction, flattened.
std::vector<Formula> conjuncts(const Formula& f);
std::vector<Formula> disjuncts(const Formula& f);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f->hash; }
};
struct FormulaEq {
  bool operator()(const Formula& a, const Formula& b) const { return same_formula(a, b); }
};

// ---------------------------------------------------------------------------
// Variables and substitution

using VarList = std::vector<std::pair<std::string, std::string>>;  // (name, sort)

/// Free variables in order of first occurrence.
VarList free_vars(const Formula& f);
VarList free_vars(const Term& t);
bool has_free_vars(const Formula& f);
void collect_var_names(const Formula& f, std::set<std::string>& out);

/// Capture-avoiding substitution of a variable by a term.
Formula substitute(const Formula& f, const std::string& var, const Term& by);
Term substitute(const Term& t, const std::string& var, const Term& by);

/// Returns `base` or `base` followed by the smallest numeric suffix that is
/// not in `used`; the result is added to `used`.
std::string fresh_name(const std::string& base, std::set<std::string>& used);

// ---------------------------------------------------------------------------
// Generic rewriting

/// Rebuilds `f` bottom-up, replacing each term by `fn(term)` (applied to
/// outermost terms only; `fn` recurses itself if it wants to).
Formula map_terms(const Formula& f, const std::function<Term(const Term&)>& fn);
/// Rebuilds `f`, replacing atoms and equalities by `fn(atom)`.
Formula map_atoms(const Formula& f, const std::function<Formula(const Formula&)>& fn);
/// Renames function or predicate symbols.
Formula rename_symbols(const Formula& f, const std::map<std::string, std::string>& renaming);
Term rename_symbols(const Term& t, const std::map<std::string, std::string>& renaming);

/// Expands choice formulas {F} into F | not F, recursively.
Formula normalize(const Formula& f);

/// Function and predicate constants (user and builtin) occurring in f.
std::set<std::string> constants_of(const Formula& f);
std::set<std::string> constants_of(const Term& t);
bool term_mentions(const Term& t, const std::set<std::string>& symbols);

// ---------------------------------------------------------------------------
// Sorting

/// Sort of a term, or SortError.
std::string sort_of(const Term& t, const Signature& sig);
/// Throws SortError if a term or atom is ill-sorted.
void check_sorts(const Formula& f, const Signature& sig);

// ---------------------------------------------------------------------------
// Polarity

enum class Polarity { StrictlyPositive, Positive, Negative };

struct Occurrence {
  std::string symbol;
  int antecedents = 0;   // implications having this occurrence in their antecedent
  bool negated = false;  // inside a subformula that begins with negation
  Polarity polarity() const;
};

/// Every occurrence of a function or predicate constant, in left-to-right order.
std::vector<Occurrence> occurrences(const Formula& f);
Polarity occurrence_polarity(const Formula& f, std::size_t index);
bool occurrence_negated(const Formula& f, std::size_t index);
bool negative_on(const Formula& f, const std::vector<std::string>& c);
std::set<std::string> strictly_positive_symbols(const Formula& f);

// ---------------------------------------------------------------------------
// Rules and programs

enum class RuleKind { Plain, Constraint, Choice };

struct Rule {
  Formula head;
  Formula body;  // null for facts
  RuleKind kind = RuleKind::Plain;
  SourceSpan span;
};

Rule make_rule(Formula head, Formula body);

struct Program {
  Signature signature;
  std::vector<Rule> rules;
  std::vector<std::string> intensional;
  VarList variables;  // `var` declarations, in order

  /// Members of the intensional list that are predicates / functions.
  std::vector<std::string> intensional_predicates() const;
  std::vector<std::string> intensional_functions() const;
};

/// Closure of body -> head; facts become their closure and constraints the
/// closure of `not body`. Free variables are quantified head-first.
Formula rule_formula(const Rule& r);
Formula fol_representation(const Program& p);

/// Checks that every member of c is a declared user constant, without repeats.
void check_intensional(const Signature& sig, const std::vector<std::string>& c);

}  // namespace fsmkit
