#pragma once

#include "fsmkit/interp.hpp"
#include "fsmkit/stable.hpp"
#include "fsmkit/syntax.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fsmkit {

// ---------------------------------------------------------------------------
// Background theories

enum class BackgroundKind { None, Integers, Reals };

/// The background part of a signature: the builtin sorts and arithmetic.
/// `slice` bounds int / real for the finite checkers; it plays no role in
/// SMT emission, where the background is the real thing.
struct BackgroundTheory {
  BackgroundKind kind = BackgroundKind::Integers;
  UniverseSpec slice;
};

/// Raised when an interpretation reinterprets background symbols.
class NotTInterpretationError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// check_stable restricted to T-interpretations. Builtins are never varied;
/// I must interpret them in the standard way and its int / real extents
/// must match the slice where one is given.
bool t_stable_check(const Formula& f, const std::vector<std::string>& c, const Interpretation& I,
                    const BackgroundTheory& bg, StableMethod method = StableMethod::Reduct);

// ---------------------------------------------------------------------------
// Instantiation over finite sorts

/// One ground application of a user symbol, seen as a 0-ary constant.
struct GroundCell {
  std::string symbol;
  std::vector<Value> args;
  std::string value_sort;  // "bool" for predicate cells
  bool predicate = false;
};

/// Cell constants for every user symbol over a universe. Symbols of
/// arity 0 keep their name; others are named "f(v1,v2)".
struct CellSignature {
  Signature signature;
  std::vector<std::string> order;  // cells in declaration order
  std::map<std::string, GroundCell> cells;
  std::map<std::pair<std::string, std::vector<Value>>, std::string> name_of;

  /// Cells of the given symbols, in order.
  std::vector<std::string> cells_of(const std::vector<std::string>& symbols) const;
};

CellSignature make_cells(const Universe& u);

/// Expands quantifiers over sorts other than int and real, folds ground
/// arithmetic, replaces ground applications by cells (atoms with an argument
/// outside its sort become false) and removes trivial connectives. The
/// result is over `cells.signature`. FragmentError when an application
/// keeps a non-ground argument.
Formula instantiate(const Formula& f, const Universe& u, const CellSignature& cells);

/// Stable-model preserving simplification: literal comparisons are decided
/// and true / false propagated. With `classical`, double negations are
/// dropped as well (only valid for classical satisfaction).
Formula simplify(const Formula& f, bool classical = false);

/// Quantifiers over int / real that an equality y = t fixes (t of a subsort
/// of y's sort) are removed; the rest stay. Classical equivalence.
Formula eliminate_guarded_quantifiers(const Formula& f, const Signature& sig);

// ---------------------------------------------------------------------------
// SMT-LIB emission

struct SmtDeclaration {
  std::string symbol;  // rendered SMT-LIB symbol
  std::string cell;    // cell constant name
  std::string sort;    // Int, Real or Bool
  bool name_coded = false;  // enumerated names, stored as their index
};

struct SmtScript {
  std::string logic;
  std::vector<SmtDeclaration> declarations;
  std::vector<Formula> guards;      // membership of finite-valued constants
  std::vector<Formula> assertions;  // over cells.signature
  CellSignature cells;
  std::vector<Value> name_codes;  // enumerated names, encoded by their index
  bool get_model = true;

  /// SMT-LIB text; without check-sat / get-model when `footer` is false.
  std::string render(bool footer = true) const;
};

struct SmtOptions {
  std::optional<std::string> logic;  // overrides the inferred tag
  bool get_model = true;
};

/// Script for a completed formula over the universe `u` (used for finite
/// sorts only). FragmentError on applications that stay non-ground.
SmtScript emit_smtlib(const Formula& completed, const Universe& u, const SmtOptions& opts = {});

/// CNF, instantiation, tightness on the instantiated program, completion and
/// emission. FragmentError naming a cycle when the program is not tight.
SmtScript smt_from_program(const Formula& f, const std::vector<std::string>& c, const Universe& u,
                           const SmtOptions& opts = {});
SmtScript smt_from_program(const Program& p, const Universe& u, const SmtOptions& opts = {});

// ---------------------------------------------------------------------------
// Models

/// Values of the cell constants of a script.
using SmtModel = std::map<std::string, Value>;

/// Reads a get-model response (or a full solver transcript starting with
/// "sat"). DecodeError on a missing or unreadable constant.
SmtModel parse_smt_model(const std::string& text, const SmtScript& script);
/// The interpretation over `u` assigning each user constant its model value.
/// DecodeError when a value lies outside its sort in `u`.
Interpretation decode_model(const std::string& text, const SmtScript& script, std::shared_ptr<const Universe> u);
Interpretation model_to_interpretation(const SmtModel& m, const SmtScript& script, std::shared_ptr<const Universe> u);

/// Exact-rational evaluation of the script's assertions (guards included)
/// under a model. ContractError when an assertion keeps a quantifier.
bool holds_exactly(const SmtScript& script, const SmtModel& m);

/// Assertion excluding the given model (over the finite-valued constants).
std::string blocking_clause(const SmtScript& script, const SmtModel& m);

// ---------------------------------------------------------------------------
// SMT-LIB syntax check

/// Empty when the text is a well-formed script for the fragment the emitter
/// uses (and every symbol is declared before use); otherwise the problems.
std::vector<std::string> check_smtlib(const std::string& text);

// ---------------------------------------------------------------------------
// External solver

struct SolverConfig {
  std::string path;
  int timeout_ms = 10000;
};

/// FSMKIT_SOLVER, or the given default when unset.
std::optional<SolverConfig> solver_from_env(const std::optional<std::string>& fallback = std::nullopt);

enum class SolverVerdict { Sat, Unsat, Unknown };

struct SolverResult {
  SolverVerdict verdict = SolverVerdict::Unknown;
  std::string output;
};

/// Runs the solver on the script text. ConfigError when it cannot be
/// started or runs past the timeout.
SolverResult run_solver(const SolverConfig& solver, const std::string& script_text);

/// All models, by repeated solving with blocking clauses (at most `limit`).
std::vector<SmtModel> all_smt_models(const SolverConfig& solver, const SmtScript& script, std::size_t limit = 10000);

}  // namespace fsmkit
