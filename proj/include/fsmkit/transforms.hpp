#pragma once

#include "fsmkit/interp.hpp"
#include "fsmkit/syntax.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fsmkit {

// ---------------------------------------------------------------------------
// Clark normal form and completion

/// One implication per intensional constant, forall X (G -> p(X)) or
/// forall X Y (G -> f(X) = Y), in the order of c, followed by the conjuncts
/// that are negative on c. Heads must be atoms, equalities or choices over
/// c with c-plain arguments; anything else raises FragmentError.
Formula clark_normal_form(const Formula& f, const std::vector<std::string>& c, const Signature& sig);
Formula clark_normal_form(const Program& p);

/// Replaces each definition of a CNF formula by the biconditional.
Formula complete(const Formula& cnf, const std::vector<std::string>& c, const Signature& sig);
/// complete(clark_normal_form(p)).
Formula completion(const Program& p);

// ---------------------------------------------------------------------------
// Dependency graph

struct DependencyGraph {
  std::vector<std::string> vertices;
  std::set<std::pair<std::string, std::string>> edges;

  bool has_edge(const std::string& from, const std::string& to) const { return edges.count({from, to}) != 0; }
  /// Some cycle as a vertex sequence (first vertex repeated at the end), if any.
  std::optional<std::vector<std::string>> find_cycle() const;
  bool acyclic() const { return !find_cycle(); }
};

DependencyGraph dependency_graph(const Formula& f, const std::vector<std::string>& c);
bool is_tight(const Formula& f, const std::vector<std::string>& c);

// ---------------------------------------------------------------------------
// Plainness and unfolding

bool is_f_plain(const Formula& f, const std::string& fn);
/// f-plain for every function constant f of c.
bool is_c_plain(const Formula& f, const std::vector<std::string>& c, const Signature& sig);
/// Every strictly positive atomic occurrence is c-plain.
bool is_head_c_plain(const Formula& f, const std::vector<std::string>& c, const Signature& sig);
/// First atom that is not c-plain, for diagnostics.
std::optional<Formula> first_non_plain_atom(const Formula& f, const std::vector<std::string>& c, const Signature& sig);

/// UF_c(F): arguments mentioning c are replaced by fresh existential
/// variables, recursively. The result is c-plain.
Formula unfold(const Formula& f, const std::vector<std::string>& c, const Signature& sig);

// ---------------------------------------------------------------------------
// Bounded strong equivalence

struct StrongEquivalenceReport {
  bool refuted = false;
  int bound = 0;                                 // largest open-sort size examined
  std::uint64_t interpretations = 0;             // how many were checked
  std::optional<Interpretation> counterexample;  // over the signature with mirrors
  std::vector<std::string> constants;            // c
  std::vector<std::string> mirrors;              // d
};

/// Evaluates (F <-> G) & (d < c -> (F* <-> G*)) with c all constants of F
/// and G, on every interpretation whose open sorts have 1..kmax elements
/// (sorts with fixed extents stay as declared). Passing the bound is not a
/// proof of strong equivalence.
StrongEquivalenceReport check_strong_equivalence_bounded(const Formula& f, const Formula& g, const Signature& sig,
                                                         int kmax, const UniverseSpec& base = {});

}  // namespace fsmkit
