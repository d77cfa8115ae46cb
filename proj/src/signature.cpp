#include "fsmkit/signature.hpp"

#include "fsmkit/error.hpp"

#include <algorithm>
#include <set>

namespace fsmkit {

bool is_arith_builtin(const std::string& name) {
  return name == "+" || name == "-" || name == "*" || name == "/";
}

bool is_compare_builtin(const std::string& name) {
  return name == "<" || name == "<=" || name == ">" || name == ">=";
}

std::optional<std::vector<Value>> SortInfo::fixed_extent() const {
  switch (kind) {
    case SortKind::Range: {
      std::vector<Value> out;
      for (std::int64_t i = lo; i <= hi; ++i) out.push_back(Value::integer(i));
      return out;
    }
    case SortKind::Enumerated:
    case SortKind::Boolean:
      return members;
    default:
      return std::nullopt;
  }
}

Signature::Signature() {
  sorts_[kIntSort] = SortInfo{kIntSort, SortKind::Integer, 0, -1, {}};
  sorts_[kRealSort] = SortInfo{kRealSort, SortKind::Real, 0, -1, {}};
  sorts_[kBoolSort] = SortInfo{kBoolSort, SortKind::Boolean, 0, -1, {Value::boolean(false), Value::boolean(true)}};
  for (const char* op : {"+", "-", "*", "/"})
    functions_[op] = FunctionInfo{op, {kRealSort, kRealSort}, kRealSort, Background::BuiltinReal};
  for (const char* op : {"<", "<=", ">", ">="})
    predicates_[op] = PredicateInfo{op, {kRealSort, kRealSort}, Background::BuiltinReal};
}

void Signature::add_sort(SortInfo sort) {
  if (sorts_.count(sort.name)) throw SortError("sort '" + sort.name + "' declared twice", sort.name);
  if (functions_.count(sort.name) || predicates_.count(sort.name))
    throw SortError("sort name '" + sort.name + "' clashes with a constant", sort.name);
  if (sort.kind == SortKind::Range && sort.lo > sort.hi)
    throw DomainError("sort '" + sort.name + "' has an empty range");
  if (sort.kind == SortKind::Enumerated) {
    if (sort.members.empty()) throw DomainError("sort '" + sort.name + "' has no members");
    std::sort(sort.members.begin(), sort.members.end());
    sort.members.erase(std::unique(sort.members.begin(), sort.members.end()), sort.members.end());
  }
  sort_order_.push_back(sort.name);
  sorts_[sort.name] = std::move(sort);
}

void Signature::add_subsort(const std::string& lower, const std::string& upper) {
  for (const auto& s : {lower, upper})
    if (!has_sort(s)) throw SortError("unknown sort '" + s + "' in subsort declaration", s);
  if (lower != upper && is_subsort(upper, lower))
    throw SortError("subsort declaration " + lower + " < " + upper + " creates a cycle", lower);
  subsorts_.emplace_back(lower, upper);
}

void Signature::add_function(FunctionInfo f) {
  if (has_symbol(f.name) || sorts_.count(f.name))
    throw SortError("constant '" + f.name + "' declared twice", f.name);
  for (const auto& s : f.args)
    if (!has_sort(s)) throw SortError("unknown sort '" + s + "' in declaration of " + f.name, s);
  if (!has_sort(f.value)) throw SortError("unknown sort '" + f.value + "' in declaration of " + f.name, f.value);
  function_order_.push_back(f.name);
  functions_[f.name] = std::move(f);
}

void Signature::add_predicate(PredicateInfo p) {
  if (has_symbol(p.name) || sorts_.count(p.name))
    throw SortError("constant '" + p.name + "' declared twice", p.name);
  for (const auto& s : p.args)
    if (!has_sort(s)) throw SortError("unknown sort '" + s + "' in declaration of " + p.name, s);
  predicate_order_.push_back(p.name);
  predicates_[p.name] = std::move(p);
}

const SortInfo& Signature::sort(const std::string& n) const {
  auto it = sorts_.find(n);
  if (it == sorts_.end()) throw SortError("unknown sort '" + n + "'", n);
  return it->second;
}

const FunctionInfo& Signature::function(const std::string& n) const {
  auto it = functions_.find(n);
  if (it == functions_.end()) throw SortError("unknown function constant '" + n + "'", n);
  return it->second;
}

const PredicateInfo& Signature::predicate(const std::string& n) const {
  auto it = predicates_.find(n);
  if (it == predicates_.end()) throw SortError("unknown predicate constant '" + n + "'", n);
  return it->second;
}

std::vector<std::string> Signature::parents(const std::string& s) const {
  std::vector<std::string> out;
  for (const auto& [lo, hi] : subsorts_)
    if (lo == s) out.push_back(hi);
  const SortInfo& info = sort(s);
  if (info.kind == SortKind::Range) out.push_back(kIntSort);
  if (info.kind == SortKind::Integer) out.push_back(kRealSort);
  if (info.kind == SortKind::Enumerated) {
    bool all_int = std::all_of(info.members.begin(), info.members.end(), [](const Value& v) { return v.is_integer(); });
    bool all_num = std::all_of(info.members.begin(), info.members.end(), [](const Value& v) { return v.is_number(); });
    if (all_int) out.push_back(kIntSort);
    else if (all_num) out.push_back(kRealSort);
  }
  return out;
}

bool Signature::is_subsort(const std::string& lower, const std::string& upper) const {
  if (lower == upper) return true;
  std::vector<std::string> todo{lower};
  std::set<std::string> seen{lower};
  while (!todo.empty()) {
    std::string s = todo.back();
    todo.pop_back();
    for (const auto& p : parents(s)) {
      if (p == upper) return true;
      if (seen.insert(p).second) todo.push_back(p);
    }
  }
  return false;
}

bool Signature::compatible(const std::string& a, const std::string& b) const {
  if (is_subsort(a, b) || is_subsort(b, a)) return true;
  std::vector<std::string> todo{a};
  std::set<std::string> up{a};
  while (!todo.empty()) {
    std::string s = todo.back();
    todo.pop_back();
    for (const auto& p : parents(s))
      if (up.insert(p).second) todo.push_back(p);
  }
  for (const auto& s : up)
    if (is_subsort(b, s)) return true;
  return false;
}

std::optional<std::string> Signature::sort_of_name(const std::string& name) const {
  if (name == "true" || name == "false") return kBoolSort;
  const Value v = Value::name(name);
  // Prefer the most specific sort containing the name.
  std::optional<std::string> best;
  for (const auto& s : sort_order_) {
    const SortInfo& info = sorts_.at(s);
    if (info.kind != SortKind::Enumerated) continue;
    if (!std::binary_search(info.members.begin(), info.members.end(), v)) continue;
    if (!best || is_subsort(s, *best)) best = s;
  }
  return best;
}

std::string Signature::sort_of_value(const Value& v) const {
  if (v.is_number()) return v.is_integer() ? kIntSort : kRealSort;
  if (auto s = sort_of_name(v.as_name())) return *s;
  throw SortError("name '" + v.as_name() + "' is not a member of any declared sort", v.as_name());
}

bool operator==(const Signature& a, const Signature& b) {
  auto same_sort = [](const SortInfo& x, const SortInfo& y) {
    return x.name == y.name && x.kind == y.kind && x.lo == y.lo && x.hi == y.hi && x.members == y.members;
  };
  if (a.sorts_.size() != b.sorts_.size() || a.functions_.size() != b.functions_.size() ||
      a.predicates_.size() != b.predicates_.size())
    return false;
  for (const auto& [n, s] : a.sorts_) {
    auto it = b.sorts_.find(n);
    if (it == b.sorts_.end() || !same_sort(s, it->second)) return false;
  }
  for (const auto& [n, f] : a.functions_) {
    auto it = b.functions_.find(n);
    if (it == b.functions_.end() || it->second.args != f.args || it->second.value != f.value) return false;
  }
  for (const auto& [n, p] : a.predicates_) {
    auto it = b.predicates_.find(n);
    if (it == b.predicates_.end() || it->second.args != p.args) return false;
  }
  auto sa = a.subsorts_;
  auto sb = b.subsorts_;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

}  // namespace fsmkit
