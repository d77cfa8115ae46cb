#pragma once

#include "fsmkit/interp.hpp"
#include "fsmkit/syntax.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fsmkit {

/// A many-sorted theory recast over a single sort `universe_sort`, with a
/// predicate per original sort.
struct Desorted {
  Signature signature;
  std::string universe_sort;
  std::vector<std::string> sorts;                  // original sorts that got a predicate
  std::map<std::string, std::string> predicate_of;  // sort -> sort predicate
  Formula formula;                                 // relativized F

  // The five axiom families.
  std::vector<Formula> subsort_axioms;
  std::vector<Formula> nonempty_axioms;
  std::vector<Formula> value_axioms;
  std::vector<Formula> function_choice_axioms;
  std::vector<Formula> predicate_choice_axioms;

  /// Conjunction of the axioms; without the last two families when
  /// `with_choice` is false (enough for classical logic, not for stability).
  Formula axioms(bool with_choice = true) const;
  Formula combined(bool with_choice = true) const { return make_and(formula, axioms(with_choice)); }
};

Desorted to_unsorted(const Formula& f, const Signature& sig);

/// I^ns. Out-of-sort function arguments map to `default_element` (the least
/// element of the merged universe when absent); out-of-sort atoms are false.
Interpretation interp_to_unsorted(const Interpretation& I, const Desorted& d,
                                  const std::optional<Value>& default_element = std::nullopt);

/// R(L, K): the same sort predicates and agreement of every original
/// constant on argument tuples inside its argument sorts.
bool related(const Interpretation& L, const Interpretation& K, const Desorted& d, const Signature& original);

/// The many-sorted interpretation read off an unsorted one: sort extents
/// from the sort predicates and tables restricted to well-sorted tuples.
/// DomainError when a declared extent or a value sort is violated.
Interpretation interp_from_unsorted(const Interpretation& L, const Desorted& d, const Signature& original);

}  // namespace fsmkit
