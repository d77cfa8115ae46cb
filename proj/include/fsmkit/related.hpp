#pragma once

#include "fsmkit/interp.hpp"
#include "fsmkit/syntax.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fsmkit {

// ---------------------------------------------------------------------------
// Causal theories
//
// A causal theory is written with the rule syntax: `F :- G.` is the causal
// rule F <= G, a fact `F.` has body true and `:- G.` is bottom <= G. The
// explainable constants are function constants.

/// Tr(T): forall (not not B -> f(t) = t1) for each definite rule and
/// forall not B for each constraint. FragmentError on any other rule.
Formula causal_translate(const Program& t, const std::vector<std::string>& explainable);
Formula causal_translate(const Program& t);  // explainable = t.intensional

/// I satisfies T and no other assignment g of the explainable functions
/// makes every head true whose body holds in I.
bool cm_check(const Program& t, const std::vector<std::string>& explainable, const Interpretation& I);

/// All causal models among the extensions of `fixed`.
std::vector<Interpretation> causal_models(const Program& t, const std::vector<std::string>& explainable,
                                          const Interpretation& fixed);

// ---------------------------------------------------------------------------
// IF-programs

/// F◇(d): non-negated occurrences of f renamed to d. Negated means inside a
/// subformula that begins with negation; the rule arrow of a constraint is
/// not a negation.
Formula if_diamond(const Program& p, const std::vector<std::string>& f, const std::vector<std::string>& d);

/// I satisfies F and no f^ different from f satisfies F◇(f^). FragmentError
/// when a head or body contains an implication other than negation.
bool if_check(const Program& p, const std::vector<std::string>& f, const Interpretation& I);

// ---------------------------------------------------------------------------
// Constraint answer set programs
//
// Rules a <- B, N, Cn over 0-ary predicates (the atoms) and object
// constants (the constraint variables). A constraint is a formula that
// mentions no user predicate.

struct ConstraintLiteral {
  Formula constraint;
  bool negated = false;
};

struct ConstraintRule {
  std::optional<std::string> head;  // none for bottom
  std::vector<std::string> positive;
  std::vector<std::string> negative;
  std::vector<ConstraintLiteral> constraints;
};

struct ConstraintProgram {
  Signature signature;
  std::vector<std::string> atoms;      // 0-ary predicates, in declaration order
  std::vector<std::string> variables;  // object constants
  std::vector<ConstraintRule> rules;
  Formula formula;  // B & N & Cn -> a for every rule
};

using AtomSet = std::set<std::string>;

/// FragmentError when a head is not an atom or bottom, or a body literal is
/// neither a (negated) atom nor a constraint.
ConstraintProgram constraint_program(const Program& p);

/// Sets X that are the minimal model of the constraint reduct relative to X
/// and If (If assigns the constraint variables), in increasing order.
std::vector<AtomSet> clingcon_answer_sets(const ConstraintProgram& p, const Interpretation& If);

/// Interpretation over p's signature with the variables of If and the atoms in X.
Interpretation with_atoms(const Interpretation& If, const std::vector<std::string>& atoms, const AtomSet& x);

// ---------------------------------------------------------------------------
// ASP(LC)

/// Theory atoms of an ASP(LC) program: linear comparisons over object
/// constants, in order of first occurrence. FragmentError on negated or
/// nonlinear constraints.
std::vector<Formula> theory_atoms(const ConstraintProgram& p);

/// (X, T) is an LJN-answer set: T and the negations of the other theory
/// atoms hold together for some assignment from `slice`, (X, T) satisfies
/// the program and X is the least set satisfying its LJN-reduct.
/// ConfigError on an empty slice.
bool ljn_answer_check(const ConstraintProgram& p, const AtomSet& x, const std::vector<Formula>& t,
                      const std::vector<Value>& slice);

/// Theory atoms true under If.
std::vector<Formula> theory_atoms_true(const ConstraintProgram& p, const Interpretation& If);

// ---------------------------------------------------------------------------
// Lin-Wang programs

/// Every sort is a set of names and I is total over them.
bool is_p_interpretation(const Program& p, const Interpretation& I);

/// Ground rules of the functional reduct of P under I, printed.
std::vector<std::string> lw_reduct(const Program& p, const Interpretation& I);

/// The atoms true in I form the minimal model of the functional reduct.
/// ContractError when I is not a P-interpretation.
bool lw_answer_check(const Program& p, const Interpretation& I);

}  // namespace fsmkit
