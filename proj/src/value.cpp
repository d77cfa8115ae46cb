#include "fsmkit/value.hpp"

#include "fsmkit/error.hpp"

#include <functional>

namespace fsmkit {

namespace {

bool fits_int64(const mpz_class& z) {
  static const mpz_class lo("-9223372036854775808");
  static const mpz_class hi("9223372036854775807");
  return z >= lo && z <= hi;
}

std::int64_t to_int64(const mpz_class& z) {
  // mpz_get_si is limited to long, which is 64 bits on the supported targets.
  return static_cast<std::int64_t>(mpz_get_si(z.get_mpz_t()));
}

}  // namespace

std::string SourceSpan::to_string() const {
  std::string s = file.empty() ? "<input>" : file;
  s += ":" + std::to_string(line) + ":" + std::to_string(column_start);
  if (column_end > column_start) s += "-" + std::to_string(column_end);
  return s;
}

SyntaxError::SyntaxError(const std::string& message, SourceSpan span)
    : Error(span.to_string() + ": syntax error: " + message), span_(std::move(span)) {}

SortError::SortError(const std::string& message, std::string symbol, SourceSpan span)
    : Error((span.empty() ? std::string() : span.to_string() + ": ") + "sort error: " + message),
      symbol_(std::move(symbol)),
      span_(std::move(span)) {}

Value Value::number(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1 && fits_int64(c.get_num())) return Value(Rep(to_int64(c.get_num())));
  return Value(Rep(std::move(c)));
}

bool Value::is_integer() const {
  if (std::holds_alternative<std::int64_t>(rep_)) return true;
  if (const auto* q = std::get_if<Rational>(&rep_)) return q->get_den() == 1;
  return false;
}

Rational Value::as_rational() const {
  if (const auto* i = std::get_if<std::int64_t>(&rep_)) {
    return Rational(mpz_class(std::to_string(*i)));
  }
  return std::get<Rational>(rep_);
}

std::optional<std::int64_t> Value::as_small_integer() const {
  if (const auto* i = std::get_if<std::int64_t>(&rep_)) return *i;
  return std::nullopt;
}

std::string Value::to_string() const {
  if (const auto* i = std::get_if<std::int64_t>(&rep_)) return std::to_string(*i);
  if (const auto* q = std::get_if<Rational>(&rep_)) return q->get_str();
  return std::get<std::string>(rep_);
}

bool operator==(const Value& a, const Value& b) {
  if (a.rep_.index() != b.rep_.index()) return false;  // canonical forms differ by kind
  if (const auto* i = std::get_if<std::int64_t>(&a.rep_)) return *i == std::get<std::int64_t>(b.rep_);
  if (const auto* q = std::get_if<Rational>(&a.rep_)) return *q == std::get<Rational>(b.rep_);
  return std::get<std::string>(a.rep_) == std::get<std::string>(b.rep_);
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  const bool an = a.is_number();
  const bool bn = b.is_number();
  if (an != bn) return an ? std::strong_ordering::less : std::strong_ordering::greater;
  if (!an) return a.as_name() <=> b.as_name();
  const auto* ai = std::get_if<std::int64_t>(&a.rep_);
  const auto* bi = std::get_if<std::int64_t>(&b.rep_);
  if (ai && bi) return *ai <=> *bi;
  const int c = cmp(a.as_rational(), b.as_rational());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::size_t Value::hash() const {
  if (const auto* i = std::get_if<std::int64_t>(&rep_)) return std::hash<std::int64_t>{}(*i);
  if (const auto* q = std::get_if<Rational>(&rep_)) return std::hash<std::string>{}(q->get_str()) ^ 0x9e37u;
  return std::hash<std::string>{}(std::get<std::string>(rep_)) ^ 0x51edu;
}

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  std::string body = text.substr(pos);
  if (body.empty()) return std::nullopt;
  auto all_digits = [](const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  Rational result;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    const std::string n = body.substr(0, slash);
    const std::string d = body.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) return std::nullopt;
    mpz_class den(d);
    if (den == 0) return std::nullopt;
    result = Rational(mpz_class(n), den);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    const std::string ip = body.substr(0, dot);
    const std::string fp = body.substr(dot + 1);
    if (!(all_digits(ip) || ip.empty()) || !(all_digits(fp) || fp.empty()) || (ip.empty() && fp.empty()))
      return std::nullopt;
    mpz_class den(1);
    for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
    result = Rational(mpz_class((ip.empty() ? "0" : ip) + fp), den);
  } else {
    if (!all_digits(body)) return std::nullopt;
    result = Rational(mpz_class(body));
  }
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

namespace {

void require_numbers(const Value& a, const Value& b, const char* op) {
  if (!a.is_number() || !b.is_number())
    throw EvaluationError(std::string("arithmetic '") + op + "' applied to non-number " +
                          (a.is_number() ? b.to_string() : a.to_string()));
}

}  // namespace

Value add(const Value& a, const Value& b) {
  require_numbers(a, b, "+");
  auto x = a.as_small_integer();
  auto y = b.as_small_integer();
  std::int64_t r = 0;
  if (x && y && !__builtin_add_overflow(*x, *y, &r)) return Value::integer(r);
  return Value::number(a.as_rational() + b.as_rational());
}

Value subtract(const Value& a, const Value& b) {
  require_numbers(a, b, "-");
  auto x = a.as_small_integer();
  auto y = b.as_small_integer();
  std::int64_t r = 0;
  if (x && y && !__builtin_sub_overflow(*x, *y, &r)) return Value::integer(r);
  return Value::number(a.as_rational() - b.as_rational());
}

Value multiply(const Value& a, const Value& b) {
  require_numbers(a, b, "*");
  auto x = a.as_small_integer();
  auto y = b.as_small_integer();
  std::int64_t r = 0;
  if (x && y && !__builtin_mul_overflow(*x, *y, &r)) return Value::integer(r);
  return Value::number(a.as_rational() * b.as_rational());
}

Value divide(const Value& a, const Value& b) {
  require_numbers(a, b, "/");
  if (b.as_rational() == 0) throw EvaluationError("division by zero: " + a.to_string() + " / 0");
  return Value::number(a.as_rational() / b.as_rational());
}

}  // namespace fsmkit
