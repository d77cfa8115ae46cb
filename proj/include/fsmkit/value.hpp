#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace fsmkit {

using Rational = mpq_class;

/// A universe element: an exact number or a symbolic name.
///
/// Numbers are exact rationals; integral values that fit in 64 bits are kept
/// unboxed so that the brute-force checkers do not allocate on every lookup.
/// Names cover enumerated sort members and the booleans `true` / `false`.
/// Numbers order before names; names order lexicographically.
class Value {
 public:
  Value() : rep_(std::int64_t{0}) {}

  static Value integer(std::int64_t v) { return Value(Rep(v)); }
  static Value number(const Rational& q);
  static Value name(std::string n) { return Value(Rep(std::move(n))); }
  static Value boolean(bool b) { return name(b ? "true" : "false"); }

  bool is_number() const { return !std::holds_alternative<std::string>(rep_); }
  bool is_name() const { return std::holds_alternative<std::string>(rep_); }
  bool is_integer() const;
  bool is_boolean() const { return is_name() && (as_name() == "true" || as_name() == "false"); }

  Rational as_rational() const;
  /// Only valid when the value is an integer that fits in 64 bits.
  std::optional<std::int64_t> as_small_integer() const;
  const std::string& as_name() const { return std::get<std::string>(rep_); }

  /// "5", "-3", "7/2", or the bare name.
  std::string to_string() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

  std::size_t hash() const;

 private:
  using Rep = std::variant<std::int64_t, Rational, std::string>;
  explicit Value(Rep r) : rep_(std::move(r)) {}
  Rep rep_;
};

/// Parses "12", "-4", "3/4", "1.25" into an exact number; nullopt otherwise.
std::optional<Rational> parse_rational(const std::string& text);

// Exact arithmetic. Division by zero throws EvaluationError.
Value add(const Value& a, const Value& b);
Value subtract(const Value& a, const Value& b);
Value multiply(const Value& a, const Value& b);
Value divide(const Value& a, const Value& b);

}  // namespace fsmkit

template <>
struct std::hash<fsmkit::Value> {
  std::size_t operator()(const fsmkit::Value& v) const noexcept { return v.hash(); }
};
