#pragma once

#include "fsmkit/value.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fsmkit {

enum class Background { User, BuiltinInt, BuiltinReal, BuiltinBool };

enum class SortKind {
  Open,        // extent supplied by the caller (universe spec)
  Range,       // integers lo..hi
  Enumerated,  // explicit member list
  Integer,     // builtin int
  Real,        // builtin real
  Boolean,     // builtin bool = {false, true}
};

struct SortInfo {
  std::string name;
  SortKind kind = SortKind::Open;
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  std::vector<Value> members;  // Enumerated / Boolean only

  bool builtin() const { return kind == SortKind::Integer || kind == SortKind::Real || kind == SortKind::Boolean; }
  /// Elements fixed by the declaration itself (Range, Enumerated, Boolean).
  std::optional<std::vector<Value>> fixed_extent() const;
};

struct FunctionInfo {
  std::string name;
  std::vector<std::string> args;
  std::string value;
  Background background = Background::User;
  std::size_t arity() const { return args.size(); }
};

struct PredicateInfo {
  std::string name;
  std::vector<std::string> args;
  Background background = Background::User;
  std::size_t arity() const { return args.size(); }
};

inline const std::string kIntSort = "int";
inline const std::string kRealSort = "real";
inline const std::string kBoolSort = "bool";

bool is_arith_builtin(const std::string& name);
bool is_compare_builtin(const std::string& name);

/// Many-sorted signature. Builtin sorts int, real, bool and the arithmetic and
/// comparison symbols are always present; user declarations keep their order.
class Signature {
 public:
  Signature();

  void add_sort(SortInfo sort);
  void add_subsort(const std::string& lower, const std::string& upper);
  void add_function(FunctionInfo f);
  void add_predicate(PredicateInfo p);

  bool has_sort(const std::string& n) const { return sorts_.count(n) != 0; }
  bool has_function(const std::string& n) const { return functions_.count(n) != 0; }
  bool has_predicate(const std::string& n) const { return predicates_.count(n) != 0; }
  bool has_symbol(const std::string& n) const { return has_function(n) || has_predicate(n); }

  const SortInfo& sort(const std::string& n) const;
  const FunctionInfo& function(const std::string& n) const;
  const PredicateInfo& predicate(const std::string& n) const;

  /// Reflexive-transitive closure of declared and implicit subsort edges.
  bool is_subsort(const std::string& lower, const std::string& upper) const;
  /// True when the two sorts share a common supersort.
  bool compatible(const std::string& a, const std::string& b) const;
  bool numeric(const std::string& s) const { return is_subsort(s, kRealSort); }

  /// Sort of an enumerated member name or boolean literal.
  std::optional<std::string> sort_of_name(const std::string& name) const;
  std::string sort_of_value(const Value& v) const;

  std::vector<std::string> user_sorts() const { return sort_order_; }
  std::vector<std::string> user_functions() const { return function_order_; }
  std::vector<std::string> user_predicates() const { return predicate_order_; }
  const std::vector<std::pair<std::string, std::string>>& declared_subsorts() const { return subsorts_; }

  /// Direct supersorts, declared and implicit.
  std::vector<std::string> parents(const std::string& s) const;

  friend bool operator==(const Signature& a, const Signature& b);

 private:
  std::map<std::string, SortInfo> sorts_;
  std::map<std::string, FunctionInfo> functions_;
  std::map<std::string, PredicateInfo> predicates_;
  std::vector<std::pair<std::string, std::string>> subsorts_;
  std::vector<std::string> sort_order_;
  std::vector<std::string> function_order_;
  std::vector<std::string> predicate_order_;
};

}  // namespace fsmkit
