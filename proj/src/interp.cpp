#include "fsmkit/interp.hpp"

#include <algorithm>
#include <set>

namespace fsmkit {

std::vector<Value> parse_extent(const std::string& text) {
  std::vector<Value> out;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    auto lo = parse_rational(text.substr(0, dots));
    auto hi = parse_rational(text.substr(dots + 2));
    if (!lo || !hi || lo->get_den() != 1 || hi->get_den() != 1)
      throw ConfigError("malformed range '" + text + "' (expected lo..hi)");
    for (Rational q = *lo; q <= *hi; q += 1) out.push_back(Value::number(q));
    if (out.empty()) throw DomainError("empty range '" + text + "'");
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) throw ConfigError("empty element in extent '" + text + "'");
    if (auto q = parse_rational(item)) out.push_back(Value::number(*q));
    else out.push_back(Value::name(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Universe

Universe::Universe(const Signature& sig, const UniverseSpec& spec) : sig_(std::make_shared<Signature>(sig)) {
  std::vector<std::string> all = sig.user_sorts();
  all.push_back(kIntSort);
  all.push_back(kRealSort);
  all.push_back(kBoolSort);

  for (const auto& [name, values] : spec) {
    if (!sig.has_sort(name)) throw ConfigError("universe given for unknown sort '" + name + "'");
    if (sig.sort(name).fixed_extent()) throw ConfigError("sort '" + name + "' already has a declared extent");
    if (values.empty()) throw DomainError("sort '" + name + "' has an empty extent");
  }

  // Children (direct subsorts) of every sort, declared and implicit.
  std::map<std::string, std::vector<std::string>> children;
  for (const auto& s : all)
    for (const auto& p : sig.parents(s)) children[p].push_back(s);

  std::map<std::string, std::set<Value>> ext;
  std::set<std::string> done;
  for (const auto& s : all) {
    if (auto fixed = sig.sort(s).fixed_extent()) {
      ext[s] = std::set<Value>(fixed->begin(), fixed->end());
      done.insert(s);
    }
  }
  // Open sorts and numeric slices: spec plus everything below them.
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& s : all) {
      if (done.count(s)) continue;
      const auto& kids = children[s];
      if (!std::all_of(kids.begin(), kids.end(), [&](const std::string& k) { return done.count(k) != 0; })) continue;
      std::set<Value> e;
      if (auto it = spec.find(s); it != spec.end()) e.insert(it->second.begin(), it->second.end());
      for (const auto& k : kids)
        if (ext.count(k)) e.insert(ext[k].begin(), ext[k].end());
      if (!e.empty()) ext[s] = std::move(e);
      done.insert(s);
      progress = true;
    }
  }
  for (const auto& s : all)
    if (!done.count(s)) throw SortError("cyclic subsort relation at '" + s + "'", s);

  // Subsort inclusions must hold for declared extents.
  for (const auto& [parent, kids] : children) {
    if (!ext.count(parent)) continue;
    for (const auto& k : kids) {
      if (!ext.count(k)) continue;
      for (const auto& v : ext[k])
        if (!ext[parent].count(v))
          throw DomainError("element " + v.to_string() + " of sort '" + k + "' is missing from supersort '" + parent +
                            "'");
    }
  }

  std::set<Value> everything;
  for (auto& [s, e] : ext) {
    std::vector<Value> v(e.begin(), e.end());
    auto& idx = index_[s];
    for (std::size_t i = 0; i < v.size(); ++i) idx.emplace(v[i], static_cast<int>(i));
    everything.insert(v.begin(), v.end());
    extent_[s] = std::move(v);
  }
  elements_.assign(everything.begin(), everything.end());
}

const std::vector<Value>& Universe::extent(const std::string& sort) const {
  auto it = extent_.find(sort);
  if (it == extent_.end()) throw DomainError("sort '" + sort + "' has no extent (supply one with --universe)");
  return it->second;
}

int Universe::index_of(const std::string& sort, const Value& v) const {
  auto it = index_.find(sort);
  if (it == index_.end()) return -1;
  auto jt = it->second.find(v);
  return jt == it->second.end() ? -1 : jt->second;
}

std::size_t Universe::cell_count(const std::vector<std::string>& arg_sorts) const {
  std::size_t n = 1;
  for (const auto& s : arg_sorts) n *= extent(s).size();
  return n;
}

std::optional<std::size_t> Universe::cell_of(const std::vector<std::string>& arg_sorts,
                                             const std::vector<Value>& args) const {
  std::size_t cell = 0;
  for (std::size_t i = 0; i < arg_sorts.size(); ++i) {
    const int k = index_of(arg_sorts[i], args[i]);
    if (k < 0) return std::nullopt;
    cell = cell * extent(arg_sorts[i]).size() + static_cast<std::size_t>(k);
  }
  return cell;
}

std::vector<Value> Universe::args_of(const std::vector<std::string>& arg_sorts, std::size_t cell) const {
  std::vector<Value> out(arg_sorts.size());
  for (std::size_t i = arg_sorts.size(); i-- > 0;) {
    const auto& e = extent(arg_sorts[i]);
    out[i] = e[cell % e.size()];
    cell /= e.size();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interpretation

Interpretation::Interpretation(std::shared_ptr<const Universe> u) : u_(std::move(u)) {}

std::vector<std::string> Interpretation::missing_symbols() const {
  std::vector<std::string> out;
  for (const auto& f : signature().user_functions())
    if (!funcs_.count(f)) out.push_back(f);
  for (const auto& p : signature().user_predicates())
    if (!preds_.count(p)) out.push_back(p);
  return out;
}

bool Interpretation::total() const { return missing_symbols().empty(); }

void Interpretation::init_symbol(const std::string& symbol) {
  const Signature& sig = signature();
  if (sig.has_function(symbol)) {
    const FunctionInfo& f = sig.function(symbol);
    const std::size_t cells = u_->cell_count(f.args);
    const auto& values = u_->extent(f.value);
    if (values.empty()) throw DomainError("value sort of " + symbol + " is empty");
    funcs_[symbol] = std::vector<Value>(cells, values.front());
  } else {
    const PredicateInfo& p = sig.predicate(symbol);
    preds_[symbol] = std::vector<char>(u_->cell_count(p.args), 0);
  }
}

void Interpretation::erase_symbol(const std::string& symbol) {
  funcs_.erase(symbol);
  preds_.erase(symbol);
}

void Interpretation::set_function(const std::string& f, const std::vector<Value>& args, const Value& v) {
  const FunctionInfo& info = signature().function(f);
  if (!u_->contains(info.value, v))
    throw DomainError("value " + v.to_string() + " is outside the value sort '" + info.value + "' of " + f);
  auto cell = u_->cell_of(info.args, args);
  if (!cell) throw DomainError("arguments outside the domain of " + f);
  if (!funcs_.count(f)) init_symbol(f);
  funcs_[f][*cell] = v;
}

void Interpretation::set_predicate(const std::string& p, const std::vector<Value>& args, bool v) {
  const PredicateInfo& info = signature().predicate(p);
  auto cell = u_->cell_of(info.args, args);
  if (!cell) throw DomainError("arguments outside the domain of " + p);
  if (!preds_.count(p)) init_symbol(p);
  preds_[p][*cell] = v ? 1 : 0;
}

std::optional<Value> Interpretation::function_value(const std::string& f, const std::vector<Value>& args) const {
  auto cell = u_->cell_of(signature().function(f).args, args);
  if (!cell) return std::nullopt;
  auto it = funcs_.find(f);
  if (it == funcs_.end()) throw ContractError("interpretation has no table for " + f);
  return it->second[*cell];
}

bool Interpretation::predicate_value(const std::string& p, const std::vector<Value>& args) const {
  auto cell = u_->cell_of(signature().predicate(p).args, args);
  if (!cell) return false;
  auto it = preds_.find(p);
  if (it == preds_.end()) throw ContractError("interpretation has no table for " + p);
  return it->second[*cell] != 0;
}

void Interpretation::override_builtin(const std::string& op, const std::vector<Value>& args, const Value& result) {
  overrides_[{op, args}] = result;
}

bool Interpretation::agrees_on(const Interpretation& other, const std::string& symbol) const {
  auto fa = funcs_.find(symbol);
  auto fb = other.funcs_.find(symbol);
  if (fa != funcs_.end() || fb != other.funcs_.end()) {
    return fa != funcs_.end() && fb != other.funcs_.end() && fa->second == fb->second;
  }
  auto pa = preds_.find(symbol);
  auto pb = other.preds_.find(symbol);
  if (pa == preds_.end() && pb == other.preds_.end()) return true;
  return pa != preds_.end() && pb != other.preds_.end() && pa->second == pb->second;
}

bool operator==(const Interpretation& a, const Interpretation& b) {
  if (a.u_ != b.u_ && !(*a.u_ == *b.u_)) return false;
  return a.funcs_ == b.funcs_ && a.preds_ == b.preds_ && a.overrides_ == b.overrides_;
}

bool operator<(const Interpretation& a, const Interpretation& b) {
  if (a.funcs_ != b.funcs_) return a.funcs_ < b.funcs_;
  return a.preds_ < b.preds_;
}

std::vector<std::string> Interpretation::function_symbols() const {
  std::vector<std::string> out;
  for (const auto& [n, t] : funcs_) out.push_back(n);
  return out;
}

std::vector<std::string> Interpretation::predicate_symbols() const {
  std::vector<std::string> out;
  for (const auto& [n, t] : preds_) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

struct Evaluator {
  static std::optional<Value> term(const Interpretation& I, const Term& t, Env& env) {
    switch (t->kind) {
      case TermKind::Literal:
        return t->value;
      case TermKind::Variable:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t->name) return it->second;
        throw ContractError("free variable " + t->name + " during evaluation");
      case TermKind::Apply:
        break;
    }
    std::vector<Value> args;
    args.reserve(t->args.size());
    for (const auto& a : t->args) {
      auto v = term(I, a, env);
      if (!v) return std::nullopt;
      args.push_back(std::move(*v));
    }
    if (is_arith_builtin(t->name)) {
      if (!I.overrides_.empty()) {
        auto it = I.overrides_.find({t->name, args});
        if (it != I.overrides_.end()) return it->second;
      }
      if (t->name == "+") return add(args[0], args[1]);
      if (t->name == "-") return subtract(args[0], args[1]);
      if (t->name == "*") return multiply(args[0], args[1]);
      return divide(args[0], args[1]);
    }
    auto ft = I.funcs_.find(t->name);
    if (ft == I.funcs_.end()) throw ContractError("interpretation has no table for " + t->name);
    auto cell = I.u_->cell_of(I.signature().function(t->name).args, args);
    if (!cell) return std::nullopt;
    return ft->second[*cell];
  }

  static bool compare(const std::string& op, const Value& a, const Value& b) {
    if (!a.is_number() || !b.is_number())
      throw EvaluationError("comparison '" + op + "' applied to non-number");
    if (op == "<") return a < b;
    if (op == "<=") return a <= b;
    if (op == ">") return a > b;
    return a >= b;
  }

  static bool formula(const Interpretation& I, const Formula& f, Env& env) {
    switch (f->kind) {
      case FormulaKind::Bottom:
        return false;
      case FormulaKind::Atom: {
        std::vector<Value> args;
        args.reserve(f->terms.size());
        for (const auto& t : f->terms) {
          auto v = term(I, t, env);
          if (!v) return false;
          args.push_back(std::move(*v));
        }
        if (is_compare_builtin(f->name)) {
          if (!I.overrides_.empty()) {
            auto it = I.overrides_.find({f->name, args});
            if (it != I.overrides_.end()) return it->second == Value::boolean(true);
          }
          return compare(f->name, args[0], args[1]);
        }
        auto pt = I.preds_.find(f->name);
        if (pt == I.preds_.end()) throw ContractError("interpretation has no table for " + f->name);
        auto cell = I.u_->cell_of(I.signature().predicate(f->name).args, args);
        return cell && pt->second[*cell] != 0;
      }
      case FormulaKind::Equal: {
        auto l = term(I, f->terms[0], env);
        if (!l) return false;
        auto r = term(I, f->terms[1], env);
        return r && *l == *r;
      }
      case FormulaKind::And:
        return formula(I, f->a, env) && formula(I, f->b, env);
      case FormulaKind::Or:
        return formula(I, f->a, env) || formula(I, f->b, env);
      case FormulaKind::Implies:
        return !formula(I, f->a, env) || formula(I, f->b, env);
      case FormulaKind::Choice:
        return true;  // F or not F
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        const bool universal = f->kind == FormulaKind::Forall;
        for (const auto& v : I.u_->extent(f->sort)) {
          env.emplace_back(f->name, v);
          const bool r = formula(I, f->a, env);
          env.pop_back();
          if (r != universal) return r;
        }
        return universal;
      }
    }
    return false;
  }
};

std::optional<Value> eval_term(const Interpretation& I, const Term& t, Env& env) { return Evaluator::term(I, t, env); }

bool eval(const Interpretation& I, const Formula& f, Env& env) { return Evaluator::formula(I, f, env); }

bool satisfies(const Interpretation& I, const Formula& f) {
  Env env;
  return Evaluator::formula(I, f, env);
}

bool less_on_c(const Interpretation& J, const Interpretation& I, const std::vector<std::string>& c) {
  if (J.universe_ptr() != I.universe_ptr() && !(J.universe() == I.universe()))
    throw ContractError("interpretations compared under <^c have different universes");
  std::set<std::string> cs(c.begin(), c.end());
  const Signature& sig = I.signature();
  for (const auto& f : sig.user_functions())
    if (!cs.count(f) && !J.agrees_on(I, f)) return false;
  for (const auto& p : sig.user_predicates())
    if (!cs.count(p) && !J.agrees_on(I, p)) return false;
  if (J.builtin_overrides() != I.builtin_overrides()) return false;
  bool differs = false;
  for (const auto& s : c) {
    if (sig.has_predicate(s)) {
      const auto& pj = J.predicate_table(s);
      const auto& pi = I.predicate_table(s);
      for (std::size_t k = 0; k < pj.size(); ++k)
        if (pj[k] && !pi[k]) return false;
    }
    differs = differs || !J.agrees_on(I, s);
  }
  return differs;
}

// ---------------------------------------------------------------------------
// Enumeration

std::optional<std::uint64_t> CellOdometer::count() const {
  std::uint64_t n = 1;
  for (const auto& c : cells_) {
    if (c.size() == 0) return 0;
    if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(c.size()), &n)) return std::nullopt;
  }
  return n;
}

void CellOdometer::write(Interpretation& target) const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const Cell& c = cells_[i];
    if (c.predicate) target.predicate_table(c.symbol)[c.index] = c.truth[digits_[i]];
    else target.function_table(c.symbol)[c.index] = c.options[digits_[i]];
  }
}

void CellOdometer::seek(std::uint64_t index) {
  for (std::size_t i = cells_.size(); i-- > 0;) {
    const std::uint64_t n = cells_[i].size();
    digits_[i] = static_cast<std::size_t>(index % n);
    index /= n;
  }
}

bool CellOdometer::next(Interpretation& target) {
  for (std::size_t i = cells_.size(); i-- > 0;) {
    Cell& c = cells_[i];
    if (++digits_[i] < c.size()) {
      if (c.predicate) target.predicate_table(c.symbol)[c.index] = c.truth[digits_[i]];
      else target.function_table(c.symbol)[c.index] = c.options[digits_[i]];
      return true;
    }
    digits_[i] = 0;
    if (c.predicate) target.predicate_table(c.symbol)[c.index] = c.truth[0];
    else target.function_table(c.symbol)[c.index] = c.options[0];
  }
  return false;
}

std::vector<Cell> free_cells(const Universe& u, const std::vector<std::string>& symbols) {
  std::vector<Cell> out;
  const Signature& sig = u.signature();
  for (const auto& s : symbols) {
    if (sig.has_function(s)) {
      const FunctionInfo& f = sig.function(s);
      const auto& values = u.extent(f.value);
      const std::size_t n = u.cell_count(f.args);
      for (std::size_t k = 0; k < n; ++k) out.push_back(Cell{s, false, k, values, {}});
    } else {
      const PredicateInfo& p = sig.predicate(s);
      const std::size_t n = u.cell_count(p.args);
      for (std::size_t k = 0; k < n; ++k) out.push_back(Cell{s, true, k, {}, {0, 1}});
    }
  }
  return out;
}

void for_each_interpretation(const Interpretation& fixed, const std::function<bool(const Interpretation&)>& fn) {
  Interpretation cur = fixed;
  auto missing = fixed.missing_symbols();
  for (const auto& s : missing) cur.init_symbol(s);
  CellOdometer odo(free_cells(fixed.universe(), missing));
  if (odo.count() == std::optional<std::uint64_t>(0)) return;
  odo.write(cur);
  do {
    if (!fn(cur)) return;
  } while (odo.next(cur));
}

std::vector<Interpretation> enumerate_interpretations(const Interpretation& fixed) {
  std::vector<Interpretation> out;
  for_each_interpretation(fixed, [&](const Interpretation& I) {
    out.push_back(I);
    return true;
  });
  return out;
}

std::optional<std::uint64_t> count_interpretations(const Interpretation& fixed) {
  return CellOdometer(free_cells(fixed.universe(), fixed.missing_symbols())).count();
}

UniverseSpec open_extents(const Universe& u) {
  UniverseSpec spec;
  const Signature& sig = u.signature();
  std::vector<std::string> sorts = sig.user_sorts();
  sorts.push_back(kIntSort);
  sorts.push_back(kRealSort);
  for (const auto& s : sorts)
    if (!sig.sort(s).fixed_extent() && u.has_extent(s)) spec[s] = u.extent(s);
  return spec;
}

}  // namespace fsmkit
