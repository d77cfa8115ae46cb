#include "fsmkit/parser.hpp"

#include <cctype>
#include <algorithm>
#include <exception>
#include <optional>

namespace fsmkit {

namespace {

enum class Tok { Ident, Var, Number, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

const char* const kPuncts[] = {"<->", ":-", "->", "<=", ">=", "!=", "..", "<", ">", "=", "&", "|", ",",
                               ".",   ":",  "(",  ")",  "{",  "}",  "+",  "-", "*", "/", ";"};

std::vector<Token> lex(const std::string& text, const std::string& file) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto span = [&](int c0, int c1) { return SourceSpan{file, line, c0, c1}; };
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      ++col;
      continue;
    }
    if (ch == '%') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    const int start = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      std::string word = text.substr(i, j - i);
      const bool var = std::isupper(static_cast<unsigned char>(ch)) || ch == '_';
      col += static_cast<int>(j - i);
      out.push_back({var ? Tok::Var : Tok::Ident, word, span(start, col - 1)});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j + 1 < text.size() && text[j] == '.' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      } else if (j + 1 < text.size() && text[j] == '/' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      std::string num = text.substr(i, j - i);
      col += static_cast<int>(j - i);
      out.push_back({Tok::Number, num, span(start, col - 1)});
      i = j;
      continue;
    }
    bool matched = false;
    for (const char* p : kPuncts) {
      const std::string ps(p);
      if (text.compare(i, ps.size(), ps) == 0) {
        col += static_cast<int>(ps.size());
        out.push_back({Tok::Punct, ps, span(start, col - 1)});
        i += ps.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError(std::string("unexpected character '") + ch + "'", span(start, start));
  }
  out.push_back({Tok::End, "", SourceSpan{file, line, col, col}});
  return out;
}

bool is_keyword(const std::string& w) {
  static const std::set<std::string> kw{"sort", "object", "func", "pred", "intensional", "var",
                                        "not",  "forall", "exists", "true", "false"};
  return kw.count(w) != 0;
}

bool is_comparison(const Token& t) {
  return t.kind == Tok::Punct &&
         (t.text == "=" || t.text == "!=" || t.text == "<" || t.text == "<=" || t.text == ">" || t.text == ">=");
}

class Parser {
 public:
  Parser(std::vector<Token> toks, Signature* sig, VarList globals)
      : toks_(std::move(toks)), sig_(sig), globals_(std::move(globals)) {}

  Program program() {
    Program prog;
    sig_ = &prog.signature;
    while (peek().kind != Tok::End) statement(prog);
    prog.variables = globals_;
    return prog;
  }

  Formula single_formula() {
    Formula f = iff();
    expect_end();
    return f;
  }

  Term single_term() {
    Term t = sum();
    expect_end();
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Signature* sig_;
  VarList globals_;
  std::vector<std::pair<std::string, std::string>> scope_;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(const std::string& punct) const { return peek().kind == Tok::Punct && peek().text == punct; }
  bool at_word(const std::string& w) const { return peek().kind == Tok::Ident && peek().text == w; }
  bool accept(const std::string& punct) {
    if (!at(punct)) return false;
    advance();
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().span); }

  void expect(const std::string& punct) {
    if (!accept(punct)) {
      fail("expected '" + punct + "' but found " + describe(peek()));
    }
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail("unexpected " + describe(peek()));
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }

  std::string ident() {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("expected a name but found " + describe(peek()));
    return advance().text;
  }

  std::string sort_name() {
    const Token& t = peek();
    std::string s = ident();
    if (!sig_->has_sort(s)) throw SortError("unknown sort '" + s + "'", s, t.span);
    return s;
  }

  std::vector<std::string> ident_list() {
    std::vector<std::string> out{ident()};
    while (accept(",")) out.push_back(ident());
    return out;
  }

  Value number_literal(bool negative) {
    const Token& t = peek();
    if (t.kind != Tok::Number) fail("expected a number but found " + describe(t));
    auto q = parse_rational(t.text);
    if (!q) fail("malformed number '" + t.text + "'");
    advance();
    return Value::number(negative ? Rational(-*q) : *q);
  }

  Value signed_number() {
    bool neg = accept("-");
    return number_literal(neg);
  }

  // ---- statements --------------------------------------------------------

  void statement(Program& prog) {
    const Token& first = peek();
    if (first.kind == Tok::Ident) {
      const std::string& w = first.text;
      if (w == "sort") return sort_decl();
      if (w == "object") return object_decl();
      if (w == "func") return func_decl();
      if (w == "pred") return pred_decl();
      if (w == "intensional") return intensional_decl(prog);
      if (w == "var") return var_decl();
    }
    rule(prog);
  }

  void sort_decl() {
    advance();
    const Token& name_tok = peek();
    std::string name = ident();
    if (accept("<")) {
      const Token& up = peek();
      std::string upper = ident();
      if (!sig_->has_sort(name)) throw SortError("unknown sort '" + name + "'", name, name_tok.span);
      if (!sig_->has_sort(upper)) throw SortError("unknown sort '" + upper + "'", upper, up.span);
      wrap(name_tok.span, [&] { sig_->add_subsort(name, upper); });
      expect(".");
      return;
    }
    SortInfo info;
    info.name = name;
    if (accept("=")) {
      if (accept("{")) {
        info.kind = SortKind::Enumerated;
        do {
          if (peek().kind == Tok::Number || at("-")) {
            info.members.push_back(signed_number());
          } else {
            const Token& mt = peek();
            std::string m = ident();
            if (sig_->has_symbol(m)) throw SortError("member '" + m + "' clashes with a constant", m, mt.span);
            info.members.push_back(Value::name(m));
          }
        } while (accept(","));
        expect("}");
      } else {
        info.kind = SortKind::Range;
        Value lo = signed_number();
        expect("..");
        Value hi = signed_number();
        if (!lo.as_small_integer() || !hi.as_small_integer()) fail("range bounds must be integers");
        info.lo = *lo.as_small_integer();
        info.hi = *hi.as_small_integer();
      }
    } else {
      info.kind = SortKind::Open;
    }
    expect(".");
    wrap(name_tok.span, [&] { sig_->add_sort(info); });
  }

  std::vector<std::string> sort_product() {
    std::vector<std::string> out{sort_name()};
    while (accept("*")) out.push_back(sort_name());
    return out;
  }

  void check_fresh_symbol(const std::string& n, const SourceSpan& sp) {
    if (sig_->sort_of_name(n)) throw SortError("constant '" + n + "' clashes with a sort member", n, sp);
  }

  void object_decl() {
    advance();
    const Token& t = peek();
    auto names = ident_list();
    expect(":");
    std::string s = sort_name();
    expect(".");
    for (const auto& n : names) {
      check_fresh_symbol(n, t.span);
      wrap(t.span, [&] { sig_->add_function(FunctionInfo{n, {}, s, Background::User}); });
    }
  }

  void func_decl() {
    advance();
    const Token& t = peek();
    auto names = ident_list();
    expect(":");
    std::vector<std::string> args;
    std::string value;
    if (accept("->")) {
      value = sort_name();
    } else {
      args = sort_product();
      if (accept("->")) {
        value = sort_name();
      } else if (args.size() == 1) {
        value = args[0];
        args.clear();
      } else {
        fail("expected '->' in function declaration");
      }
    }
    expect(".");
    for (const auto& n : names) {
      check_fresh_symbol(n, t.span);
      wrap(t.span, [&] { sig_->add_function(FunctionInfo{n, args, value, Background::User}); });
    }
  }

  void pred_decl() {
    advance();
    const Token& t = peek();
    auto names = ident_list();
    std::vector<std::string> args;
    if (accept(":")) args = sort_product();
    expect(".");
    for (const auto& n : names) {
      check_fresh_symbol(n, t.span);
      wrap(t.span, [&] { sig_->add_predicate(PredicateInfo{n, args, Background::User}); });
    }
  }

  void intensional_decl(Program& prog) {
    advance();
    const Token& t = peek();
    auto names = ident_list();
    expect(".");
    for (const auto& n : names) prog.intensional.push_back(n);
    wrap(t.span, [&] { check_intensional(*sig_, prog.intensional); });
  }

  void var_decl() {
    advance();
    std::vector<std::string> names;
    do {
      if (peek().kind != Tok::Var) fail("expected a variable name but found " + describe(peek()));
      names.push_back(advance().text);
    } while (accept(","));
    expect(":");
    std::string s = sort_name();
    expect(".");
    for (const auto& n : names) {
      bool replaced = false;
      for (auto& g : globals_)
        if (g.first == n) {
          g.second = s;
          replaced = true;
        }
      if (!replaced) globals_.emplace_back(n, s);
    }
  }

  void rule(Program& prog) {
    const SourceSpan start = peek().span;
    Formula head;
    Formula body;
    if (accept(":-")) {
      head = make_bottom();
      body = body_list();
    } else {
      head = iff();
      if (accept(":-")) body = body_list();
    }
    SourceSpan sp = start;
    sp.column_end = peek().span.column_start;
    expect(".");
    Rule r = make_rule(head, body);
    r.span = sp;
    wrap(sp, [&] {
      check_sorts(r.head, *sig_);
      if (r.body) check_sorts(r.body, *sig_);
    });
    prog.rules.push_back(std::move(r));
  }

  Formula body_list() {
    Formula f = iff();
    while (accept(",")) f = make_and(f, iff());
    return f;
  }

  template <typename Fn>
  void wrap(const SourceSpan& sp, Fn&& fn) {
    try {
      fn();
    } catch (const SortError& e) {
      if (!e.span().empty()) throw;
      std::string msg = e.what();
      const std::string prefix = "sort error: ";
      if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
      throw SortError(msg, e.symbol(), sp);
    } catch (const DomainError& e) {
      throw SortError(e.what(), "", sp);
    }
  }

  // ---- formulas ----------------------------------------------------------

  Formula iff() {
    Formula l = implies();
    while (accept("<->")) l = make_iff(l, implies());
    return l;
  }

  Formula implies() {
    Formula l = disj();
    if (accept("->")) return make_implies(l, implies());
    return l;
  }

  Formula disj() {
    Formula l = conj();
    while (accept("|")) l = make_or(l, conj());
    return l;
  }

  Formula conj() {
    Formula l = unary();
    while (accept("&")) l = make_and(l, unary());
    return l;
  }

  Formula unary() {
    if (at_word("not")) {
      advance();
      return make_not(unary());
    }
    return primary();
  }

  Formula quantifier(bool universal) {
    advance();
    VarList vars;
    do {
      if (peek().kind != Tok::Var) fail("expected a variable after quantifier but found " + describe(peek()));
      const Token& vt = advance();
      std::string sort;
      if (accept(":")) {
        sort = sort_name();
      } else {
        auto it = std::find_if(globals_.begin(), globals_.end(), [&](const auto& g) { return g.first == vt.text; });
        if (it == globals_.end())
          throw SortError("variable " + vt.text + " needs a sort (declare it with var or write " + vt.text + " : s)",
                          vt.text, vt.span);
        sort = it->second;
      }
      vars.emplace_back(vt.text, sort);
    } while (accept(","));
    expect("(");
    for (const auto& v : vars) scope_.push_back(v);
    Formula body = iff();
    for (std::size_t i = 0; i < vars.size(); ++i) scope_.pop_back();
    expect(")");
    return universal ? forall_all(vars, body) : exists_all(vars, body);
  }

  Formula primary() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (t.text == "forall") return quantifier(true);
      if (t.text == "exists") return quantifier(false);
      if ((t.text == "true" || t.text == "false") && !is_comparison(peek(1))) {
        advance();
        return t.text == "true" ? make_top() : make_bottom();
      }
      if (sig_->has_predicate(t.text) && !is_keyword(t.text)) return atom();
    }
    if (accept("{")) {
      Formula inner = iff();
      expect("}");
      return make_choice(inner);
    }
    if (at("(")) {
      // A parenthesis opens either a formula or an arithmetic term; try the
      // formula reading first and report whichever attempt got further.
      const std::size_t save = pos_;
      std::exception_ptr formula_error;
      std::size_t formula_reach = 0;
      const std::size_t scope_size = scope_.size();
      try {
        advance();
        Formula f = iff();
        expect(")");
        if (!is_comparison(peek()) && !at("+") && !at("-") && !at("*") && !at("/")) return f;
        fail("parenthesized term");
      } catch (const Error&) {
        formula_error = std::current_exception();
        formula_reach = pos_;
      }
      scope_.resize(scope_size);
      pos_ = save;
      try {
        return comparison();
      } catch (const Error&) {
        if (pos_ < formula_reach) std::rethrow_exception(formula_error);
        throw;
      }
    }
    return comparison();
  }

  Formula atom() {
    const Token& t = advance();
    std::vector<Term> args;
    if (accept("(")) {
      args.push_back(sum());
      while (accept(",")) args.push_back(sum());
      expect(")");
    }
    return make_atom(t.text, std::move(args));
  }

  Formula comparison() {
    const SourceSpan sp = peek().span;
    Term l = sum();
    if (is_comparison(peek())) {
      const std::string op = advance().text;
      Term r = sum();
      if (op == "=") return make_equal(l, r);
      if (op == "!=") return make_neq(l, r);
      return make_atom(op, {l, r});
    }
    if (l->kind == TermKind::Apply && !is_arith_builtin(l->name) && sig_->has_function(l->name) &&
        sig_->function(l->name).value == kBoolSort)
      return make_equal(l, make_lit(Value::boolean(true)));
    throw SyntaxError("expected a comparison after term", sp.empty() ? peek().span : sp);
  }

  // ---- terms -------------------------------------------------------------

  Term sum() {
    Term l = product();
    while (at("+") || at("-")) {
      std::string op = advance().text;
      l = make_apply(op, {l, product()});
    }
    return l;
  }

  Term product() {
    Term l = unary_term();
    while (at("*") || at("/")) {
      std::string op = advance().text;
      l = make_apply(op, {l, unary_term()});
    }
    return l;
  }

  Term unary_term() {
    if (at("-")) {
      advance();
      if (peek().kind == Tok::Number) return make_lit(number_literal(true));
      return make_apply("-", {make_int(0), unary_term()});
    }
    return term_primary();
  }

  Term term_primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) return make_lit(number_literal(false));
    if (accept("(")) {
      Term inner = sum();
      expect(")");
      return inner;
    }
    if (t.kind == Tok::Var) {
      advance();
      for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
        if (it->first == t.text) return make_var(t.text, it->second);
      for (const auto& g : globals_)
        if (g.first == t.text) return make_var(t.text, g.second);
      throw SortError("undeclared variable " + t.text, t.text, t.span);
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "true" || t.text == "false") {
        advance();
        return make_lit(Value::boolean(t.text == "true"));
      }
      if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'");
      advance();
      if (sig_->has_function(t.text)) {
        std::vector<Term> args;
        if (accept("(")) {
          args.push_back(sum());
          while (accept(",")) args.push_back(sum());
          expect(")");
        }
        return make_apply(t.text, std::move(args));
      }
      if (sig_->sort_of_name(t.text)) return make_lit(Value::name(t.text));
      if (sig_->has_predicate(t.text))
        throw SortError("predicate '" + t.text + "' used as a term", t.text, t.span);
      throw SortError("unknown symbol '" + t.text + "'", t.text, t.span);
    }
    fail("expected a term but found " + describe(t));
  }
};

}  // namespace

Program parse_program(const std::string& text, const std::string& file) {
  Parser p(lex(text, file), nullptr, {});
  return p.program();
}

Formula parse_formula(const std::string& text, const Signature& sig, const VarList& vars) {
  Signature copy = sig;
  Parser p(lex(text, ""), &copy, vars);
  Formula f = p.single_formula();
  check_sorts(f, sig);
  return f;
}

Term parse_term(const std::string& text, const Signature& sig, const VarList& vars) {
  Signature copy = sig;
  Parser p(lex(text, ""), &copy, vars);
  Term t = p.single_term();
  sort_of(t, sig);
  return t;
}

bool same_program(const Program& a, const Program& b) {
  if (!(a.signature == b.signature) || a.intensional != b.intensional || a.rules.size() != b.rules.size())
    return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    const Rule& x = a.rules[i];
    const Rule& y = b.rules[i];
    if (x.kind != y.kind || !same_formula(x.head, y.head)) return false;
    if (static_cast<bool>(x.body) != static_cast<bool>(y.body)) return false;
    if (x.body && !same_formula(x.body, y.body)) return false;
  }
  return true;
}

}  // namespace fsmkit
