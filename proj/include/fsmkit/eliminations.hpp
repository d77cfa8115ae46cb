#pragma once

#include "fsmkit/interp.hpp"
#include "fsmkit/syntax.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fsmkit {

/// p replaced by a function f into a two-valued sort.
struct PredicateElimination {
  Signature signature;
  Formula formula;        // F with each p(t) turned into f(t) = one
  Formula default_false;  // forall x {f(x) = zero}
  Formula functional;     // zero != one & not not forall x (f(x) = zero | f(x) = one)
  std::string predicate, function, zero, one, value_sort;

  Formula combined() const { return make_and(make_and(formula, default_false), functional); }
};

/// Replaces predicate p by function `fn`. The value sort is `value_sort` when
/// given, otherwise a new open sort; the object constants standing for 0 and
/// 1 get fresh names. FreshNameError when `fn` is already declared.
PredicateElimination eliminate_predicate(const Formula& f, const Signature& sig, const std::string& p,
                                         const std::string& fn,
                                         const std::optional<std::string>& value_sort = std::nullopt);

/// f replaced by a predicate p whose last argument is the value.
struct FunctionElimination {
  Signature signature;
  Formula formula;     // F with each f(t) = t1 turned into p(t, t1)
  Formula uniqueness;  // forall x y z (p(x, y) & p(x, z) & y != z -> false)
  Formula existence;   // not not forall x exists y p(x, y)
  std::string function, predicate;

  Formula uec() const { return make_and(uniqueness, existence); }
  Formula combined() const { return make_and(formula, uec()); }
};

/// FragmentError naming the offending atom when F is not fn-plain.
FunctionElimination eliminate_function(const Formula& f, const Signature& sig, const std::string& fn,
                                       const std::string& p);

/// c with `from` replaced by `to`.
std::vector<std::string> replace_constant(std::vector<std::string> c, const std::string& from, const std::string& to);

/// I^p_f: f(x) is `one` where p(x) holds and `zero` elsewhere. The value
/// sort, when open, gets `value_extent`. ContractError when zero == one.
Interpretation map_pred_to_func(const Interpretation& I, const PredicateElimination& e,
                                const std::vector<Value>& value_extent = {Value::integer(0), Value::integer(1)},
                                const Value& zero = Value::integer(0), const Value& one = Value::integer(1));

/// I^f_p: p is the graph of f.
Interpretation map_func_to_pred(const Interpretation& I, const FunctionElimination& e);

}  // namespace fsmkit
