#pragma once

#include "fsmkit/syntax.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace fsmkit {

/// Extents for sorts whose elements the declarations do not fix (open sorts
/// and slices of int / real).
using UniverseSpec = std::map<std::string, std::vector<Value>>;

/// Parses "lo..hi" or "a,b,c" (numbers or names) into an extent.
std::vector<Value> parse_extent(const std::string& text);

/// Per-sort finite universes for one signature. Immutable once built; shared
/// by every interpretation over it.
class Universe {
 public:
  Universe(const Signature& sig, const UniverseSpec& spec = {});

  const Signature& signature() const { return *sig_; }
  std::shared_ptr<const Signature> signature_ptr() const { return sig_; }

  bool has_extent(const std::string& sort) const { return extent_.count(sort) != 0; }
  /// Sorted extent of a sort; DomainError when the sort has none.
  const std::vector<Value>& extent(const std::string& sort) const;
  /// Index of v in the extent of `sort`, or -1.
  int index_of(const std::string& sort, const Value& v) const;
  bool contains(const std::string& sort, const Value& v) const { return index_of(sort, v) >= 0; }
  /// Union of all extents, sorted.
  const std::vector<Value>& elements() const { return elements_; }

  /// Number of argument tuples of a function/predicate (product of extents).
  std::size_t cell_count(const std::vector<std::string>& arg_sorts) const;
  /// Mixed-radix cell of an argument tuple; nullopt if an argument lies outside its sort.
  std::optional<std::size_t> cell_of(const std::vector<std::string>& arg_sorts, const std::vector<Value>& args) const;
  std::vector<Value> args_of(const std::vector<std::string>& arg_sorts, std::size_t cell) const;

  friend bool operator==(const Universe& a, const Universe& b) { return a.extent_ == b.extent_; }

 private:
  std::shared_ptr<const Signature> sig_;
  std::map<std::string, std::vector<Value>> extent_;
  std::map<std::string, std::unordered_map<Value, int>> index_;
  std::vector<Value> elements_;
};

/// Extents of the sorts a spec may set (open sorts, int, real), so that the
/// same universe can be rebuilt over an extended signature.
UniverseSpec open_extents(const Universe& u);

/// A finite many-sorted interpretation. Tables for user symbols may be
/// missing, which makes the interpretation partial (used for fixed parts).
/// Builtin arithmetic and comparisons evaluate exactly unless overridden;
/// overrides only exist to model interpretations that are not T-interpretations.
class Interpretation {
 public:
  explicit Interpretation(std::shared_ptr<const Universe> u);

  const Universe& universe() const { return *u_; }
  std::shared_ptr<const Universe> universe_ptr() const { return u_; }
  const Signature& signature() const { return u_->signature(); }

  bool has(const std::string& symbol) const { return funcs_.count(symbol) || preds_.count(symbol); }
  bool total() const;
  /// User symbols without a table.
  std::vector<std::string> missing_symbols() const;

  /// Creates a table for a symbol filled with the first value / false.
  void init_symbol(const std::string& symbol);
  void erase_symbol(const std::string& symbol);

  void set_function(const std::string& f, const std::vector<Value>& args, const Value& v);
  void set_predicate(const std::string& p, const std::vector<Value>& args, bool v);
  std::optional<Value> function_value(const std::string& f, const std::vector<Value>& args) const;
  bool predicate_value(const std::string& p, const std::vector<Value>& args) const;

  std::vector<Value>& function_table(const std::string& f) { return funcs_.at(f); }
  const std::vector<Value>& function_table(const std::string& f) const { return funcs_.at(f); }
  std::vector<char>& predicate_table(const std::string& p) { return preds_.at(p); }
  const std::vector<char>& predicate_table(const std::string& p) const { return preds_.at(p); }

  void override_builtin(const std::string& op, const std::vector<Value>& args, const Value& result);
  bool has_builtin_overrides() const { return !overrides_.empty(); }
  const std::map<std::pair<std::string, std::vector<Value>>, Value>& builtin_overrides() const { return overrides_; }

  /// Same tables for the given symbol.
  bool agrees_on(const Interpretation& other, const std::string& symbol) const;

  friend bool operator==(const Interpretation& a, const Interpretation& b);
  friend bool operator<(const Interpretation& a, const Interpretation& b);

  std::vector<std::string> function_symbols() const;
  std::vector<std::string> predicate_symbols() const;

 private:
  friend struct Evaluator;
  std::shared_ptr<const Universe> u_;
  std::map<std::string, std::vector<Value>> funcs_;
  std::map<std::string, std::vector<char>> preds_;
  std::map<std::pair<std::string, std::vector<Value>>, Value> overrides_;
};

/// Variable bindings during evaluation, innermost last.
using Env = std::vector<std::pair<std::string, Value>>;

/// Value of a term, or nullopt when a function is applied outside its
/// domain (the enclosing atom is then false).
std::optional<Value> eval_term(const Interpretation& I, const Term& t, Env& env);
bool eval(const Interpretation& I, const Formula& f, Env& env);
/// Classical satisfaction of a sentence.
bool satisfies(const Interpretation& I, const Formula& f);

/// J <^c I: same universe, agreement off c, p^J ⊆ p^I for predicates in c,
/// and disagreement somewhere on c.
bool less_on_c(const Interpretation& J, const Interpretation& I, const std::vector<std::string>& c);

/// One varying table cell and the values it may take.
struct Cell {
  std::string symbol;
  bool predicate = false;
  std::size_t index = 0;
  std::vector<Value> options;  // functions
  std::vector<char> truth;     // predicates
  std::size_t size() const { return predicate ? truth.size() : options.size(); }
};

/// Mixed-radix odometer over cells, writing each assignment into a target
/// interpretation in place.
class CellOdometer {
 public:
  CellOdometer(std::vector<Cell> cells) : cells_(std::move(cells)), digits_(cells_.size(), 0) {}

  /// Total assignments; nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> count() const;
  void write(Interpretation& target) const;
  /// Jumps to assignment number `index` (0-based).
  void seek(std::uint64_t index);
  /// Advances; returns false after the last assignment.
  bool next(Interpretation& target);
  const std::vector<Cell>& cells() const { return cells_; }

 private:
  std::vector<Cell> cells_;
  std::vector<std::size_t> digits_;
};

/// Cells of the given symbols with all values allowed.
std::vector<Cell> free_cells(const Universe& u, const std::vector<std::string>& symbols);

/// Calls `fn` on every total extension of `fixed` that varies exactly the
/// symbols missing from it; stops early when `fn` returns false.
void for_each_interpretation(const Interpretation& fixed, const std::function<bool(const Interpretation&)>& fn);
std::vector<Interpretation> enumerate_interpretations(const Interpretation& fixed);
/// Number of extensions; nullopt on overflow.
std::optional<std::uint64_t> count_interpretations(const Interpretation& fixed);

}  // namespace fsmkit
