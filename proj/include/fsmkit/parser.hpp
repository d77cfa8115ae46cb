#pragma once

#include "fsmkit/syntax.hpp"

#include <string>

namespace fsmkit {

/// Parses a program in the `.fsm` surface syntax:
///
///   sort level = 0..20.          sort color = {red, green}.   sort node.
///   sort small < level.          object amt0, amt1 : level.
///   func loc : block * step -> place.   pred flush.   pred on : block * place.
///   intensional amt1.            var X, Y : level.
///   { amt1 = X + 1 } :- amt0 = X.
///   amt1 = 0 :- flush.
///   :- amt1 > 20.
///
/// Formulas use `not & | -> <->`, `forall X : s (F)`, `exists X (F)`, choice
/// `{ F }` and comparisons `= != < <= > >=`; `%` starts a line comment.
Program parse_program(const std::string& text, const std::string& file = "");

/// Parses a single formula against a signature. Free variables must appear in
/// `vars`.
Formula parse_formula(const std::string& text, const Signature& sig, const VarList& vars = {});
Term parse_term(const std::string& text, const Signature& sig, const VarList& vars = {});

std::string print_term(const Term& t);
std::string print_formula(const Formula& f);
std::string print_rule(const Rule& r);
/// Declarations followed by rules; re-parses to a structurally equal program.
std::string print_program(const Program& p);
std::string print_declarations(const Signature& sig);

/// Structural equality of programs: signature, intensional list, variables and rules.
bool same_program(const Program& a, const Program& b);

}  // namespace fsmkit
