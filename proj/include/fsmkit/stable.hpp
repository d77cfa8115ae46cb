#pragma once

#include "fsmkit/interp.hpp"
#include "fsmkit/syntax.hpp"

#include <memory>
#include <string>
#include <vector>

namespace fsmkit {

// ---------------------------------------------------------------------------
// Ground formulas

enum class GroundKind { Bottom, Atom, SetAnd, SetOr, Implies };

struct GroundNode;
using Ground = std::shared_ptr<const GroundNode>;

/// Variable-free formula whose quantifiers became finite set conjunctions and
/// disjunctions. `atom` holds a ground atom or equality (object names are
/// literals). Set members are deduplicated structurally.
struct GroundNode {
  GroundKind kind;
  Formula atom;
  std::vector<Ground> kids;  // set members, or {antecedent, consequent}
  std::size_t hash = 0;
};

Ground ground_bottom();
Ground ground_atom(const Formula& atom);
Ground ground_and(std::vector<Ground> members);
Ground ground_or(std::vector<Ground> members);
Ground ground_implies(const Ground& a, const Ground& b);
bool same_ground(const Ground& a, const Ground& b);

/// gr_I[F] for a sentence F (choice sugar is expanded first).
Ground ground(const Formula& f, const Interpretation& I);
/// Replaces atoms and implications false in I by bottom.
Ground reduct(const Ground& g, const Interpretation& I);
bool eval_ground(const Interpretation& J, const Ground& g);
/// Removes bottom disjuncts, true conjuncts and trivial implications; for display.
Ground simplify_ground(const Ground& g);
std::string print_ground(const Ground& g);

// ---------------------------------------------------------------------------
// Second-order characterization

/// Fresh mirror names (`name_hat`, with a numeric suffix if taken).
std::vector<std::string> mirror_names(const Signature& sig, const std::vector<std::string>& c);
/// Signature extended with mirror copies of c.
Signature with_mirrors(const Signature& sig, const std::vector<std::string>& c, const std::vector<std::string>& d);

/// F*(d): atomic F becomes F' & F (F' = F with c renamed to d);
/// (G -> H)* = (G* -> H*) & (G -> H); the other connectives distribute.
Formula star(const Formula& f, const std::vector<std::string>& c, const std::vector<std::string>& d,
             const Signature& sig);

/// d < c: predicate mirrors are contained in their originals and d differs
/// from c somewhere; function mirrors are unconstrained.
Formula mirror_less(const std::vector<std::string>& c, const std::vector<std::string>& d, const Signature& sig);

/// Choice(c): the conjunction of forall x {p(x)} and forall x y {f(x) = y}.
Formula choice_of(const std::vector<std::string>& c, const Signature& sig);

// ---------------------------------------------------------------------------
// Stable model checking

enum class StableMethod { Reduct, SecondOrder, Both };

/// I is a stable model of F relative to c. With `Both`, throws Error when
/// the two characterizations disagree.
bool check_stable(const Formula& f, const std::vector<std::string>& c, const Interpretation& I,
                  StableMethod method = StableMethod::Reduct);

/// Explanation of a rejected candidate: either I does not satisfy F, or a
/// witness J <^c I satisfying the reduct.
struct StableVerdict {
  bool stable = false;
  bool model = false;
  std::optional<Interpretation> witness;
};
StableVerdict explain_stable(const Formula& f, const std::vector<std::string>& c, const Interpretation& I);

struct StableOptions {
  StableMethod method = StableMethod::Reduct;
  unsigned jobs = 1;
};

/// All stable models among the total extensions of `fixed` (symbols missing
/// from `fixed` vary), in enumeration order.
std::vector<Interpretation> stable_models(const Formula& f, const std::vector<std::string>& c,
                                          const Interpretation& fixed, const StableOptions& opts = {});

/// Models of F among the extensions of `fixed`.
std::vector<Interpretation> classical_models(const Formula& f, const Interpretation& fixed);

// ---------------------------------------------------------------------------
// Multi-valued propositional formulas

/// Reduct of an mvp-formula: maximal subformulas false in I become bottom.
Formula mvp_reduct(const Formula& f, const Interpretation& I);
/// I is the only mvp-interpretation satisfying the reduct of F at I. The
/// mvp-constants are the object constants of I's signature, each ranging
/// over its value sort.
bool mvp_stable_check(const Formula& f, const Interpretation& I);

}  // namespace fsmkit
