#include "fsmkit/smt.hpp"
#include "sexpr.hpp"

#include <map>
#include <set>

namespace fsmkit {

namespace {

using sexpr::Node;

bool is_numeral(const std::string& s) {
  if (s.empty()) return false;
  if (s.size() > 1 && s[0] == '0') return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool is_decimal(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos || dot + 1 >= s.size()) return false;
  if (!is_numeral(s.substr(0, dot))) return false;
  for (std::size_t i = dot + 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

struct Checker {
  std::vector<std::string> problems;
  std::map<std::string, std::pair<std::vector<std::string>, std::string>> declared;
  std::vector<std::pair<std::string, std::string>> bound;
  bool logic_set = false;

  void fail(const Node& at, const std::string& msg) { problems.push_back("line " + std::to_string(at.line) + ": " + msg); }

  std::optional<std::string> sort(const Node& n) {
    if (n.is("Int") || n.is("Real") || n.is("Bool")) return n.text;
    fail(n, "unknown sort");
    return std::nullopt;
  }

  // Sort of a term, or nullopt after reporting.
  std::optional<std::string> term(const Node& n) {
    if (n.kind == Node::String) {
      fail(n, "string literals are not used");
      return std::nullopt;
    }
    if (!n.is_list()) {
      if (n.kind == Node::Atom && is_numeral(n.text)) return "Int";
      if (n.kind == Node::Atom && is_decimal(n.text)) return "Real";
      if (n.is("true") || n.is("false")) return "Bool";
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (it->first == n.text) return it->second;
      auto d = declared.find(n.text);
      if (d == declared.end()) {
        fail(n, "undeclared symbol '" + n.text + "'");
        return std::nullopt;
      }
      if (!d->second.first.empty()) fail(n, "function '" + n.text + "' used without arguments");
      return d->second.second;
    }
    if (n.items.empty()) {
      fail(n, "empty application");
      return std::nullopt;
    }
    const Node& head = n.items[0];
    if (head.is("forall") || head.is("exists")) return quantifier(n);
    if (head.is("let")) return let(n);
    if (head.is_list() || !head.is_symbol()) {
      fail(n, "application head must be a symbol");
      return std::nullopt;
    }
    std::vector<std::string> args;
    for (std::size_t i = 1; i < n.items.size(); ++i) {
      auto s = term(n.items[i]);
      if (!s) return std::nullopt;
      args.push_back(*s);
    }
    return apply(n, head.text, args);
  }

  std::optional<std::string> apply(const Node& n, const std::string& f, const std::vector<std::string>& args) {
    auto all = [&](const std::string& s) {
      for (const auto& a : args)
        if (a != s) return false;
      return true;
    };
    auto same = [&] {
      for (const auto& a : args)
        if (a != args[0]) return false;
      return true;
    };
    auto bad = [&](const std::string& why) -> std::optional<std::string> {
      fail(n, "'" + f + "' " + why);
      return std::nullopt;
    };
    if (f == "not") {
      if (args.size() != 1 || !all("Bool")) return bad("takes one Bool");
      return "Bool";
    }
    if (f == "and" || f == "or" || f == "xor" || f == "=>") {
      if (args.size() < 2 || !all("Bool")) return bad("takes two or more Bool");
      return "Bool";
    }
    if (f == "=" || f == "distinct") {
      if (args.size() < 2 || !same()) return bad("needs two or more arguments of one sort");
      return "Bool";
    }
    if (f == "ite") {
      if (args.size() != 3 || args[0] != "Bool" || args[1] != args[2]) return bad("takes Bool and two branches of one sort");
      return args[1];
    }
    if (f == "+" || f == "*" || f == "-") {
      if (args.empty() || (args.size() == 1 && f != "-") || !same() || args[0] == "Bool")
        return bad("needs numeric arguments of one sort");
      return args[0];
    }
    if (f == "/") {
      if (args.size() < 2 || !all("Real")) return bad("takes Real arguments");
      return "Real";
    }
    if (f == "div" || f == "mod") {
      if (args.size() != 2 || !all("Int")) return bad("takes two Int");
      return "Int";
    }
    if (f == "abs") {
      if (args.size() != 1 || !all("Int")) return bad("takes one Int");
      return "Int";
    }
    if (f == "<" || f == "<=" || f == ">" || f == ">=") {
      if (args.size() < 2 || !same() || args[0] == "Bool") return bad("needs numeric arguments of one sort");
      return "Bool";
    }
    if (f == "to_real") {
      if (args.size() != 1 || args[0] != "Int") return bad("takes one Int");
      return "Real";
    }
    if (f == "to_int") {
      if (args.size() != 1 || args[0] != "Real") return bad("takes one Real");
      return "Int";
    }
    auto d = declared.find(f);
    if (d == declared.end()) return bad("is not declared");
    if (d->second.first != args) return bad("applied to arguments of the wrong sorts");
    return d->second.second;
  }

  std::optional<std::string> quantifier(const Node& n) {
    if (n.items.size() != 3 || !n.items[1].is_list() || n.items[1].items.empty()) {
      fail(n, "quantifier needs a variable list and a body");
      return std::nullopt;
    }
    std::size_t pushed = 0;
    bool ok = true;
    for (const auto& v : n.items[1].items) {
      if (!v.is_list() || v.items.size() != 2 || !v.items[0].is_symbol()) {
        fail(v, "malformed sorted variable");
        ok = false;
        break;
      }
      auto s = sort(v.items[1]);
      if (!s) {
        ok = false;
        break;
      }
      bound.emplace_back(v.items[0].text, *s);
      ++pushed;
    }
    std::optional<std::string> body = ok ? term(n.items[2]) : std::nullopt;
    bound.resize(bound.size() - pushed);
    if (!body) return std::nullopt;
    if (*body != "Bool") {
      fail(n, "quantifier body must be Bool");
      return std::nullopt;
    }
    return "Bool";
  }

  std::optional<std::string> let(const Node& n) {
    if (n.items.size() != 3 || !n.items[1].is_list()) {
      fail(n, "let needs bindings and a body");
      return std::nullopt;
    }
    std::vector<std::pair<std::string, std::string>> binds;
    for (const auto& b : n.items[1].items) {
      if (!b.is_list() || b.items.size() != 2 || !b.items[0].is_symbol()) {
        fail(b, "malformed binding");
        return std::nullopt;
      }
      auto s = term(b.items[1]);
      if (!s) return std::nullopt;
      binds.emplace_back(b.items[0].text, *s);
    }
    bound.insert(bound.end(), binds.begin(), binds.end());
    auto body = term(n.items[2]);
    bound.resize(bound.size() - binds.size());
    return body;
  }

  void declare(const Node& at, const std::string& name, std::vector<std::string> args, const std::string& result) {
    if (declared.count(name)) fail(at, "'" + name + "' declared twice");
    declared[name] = {std::move(args), result};
  }

  void command(const Node& n) {
    if (!n.is_list() || n.items.empty() || n.items[0].kind != Node::Atom) {
      fail(n, "expected a command");
      return;
    }
    const std::string& c = n.items[0].text;
    const auto& it = n.items;
    if (c == "set-logic") {
      if (it.size() != 2 || !it[1].is_symbol()) return fail(n, "set-logic takes a logic name");
      if (logic_set) return fail(n, "logic set twice");
      if (!declared.empty()) return fail(n, "set-logic must come before declarations");
      logic_set = true;
      return;
    }
    if (c == "set-option" || c == "set-info") {
      if (it.size() != 3 || it[1].kind != Node::Atom || it[1].text.empty() || it[1].text[0] != ':')
        fail(n, c + " takes a keyword and a value");
      return;
    }
    if (c == "check-sat" || c == "get-model" || c == "exit" || c == "push" || c == "pop") {
      if (c == "push" || c == "pop") {
        if (it.size() > 2 || (it.size() == 2 && !is_numeral(it[1].text))) fail(n, c + " takes an optional numeral");
      } else if (it.size() != 1) {
        fail(n, c + " takes no arguments");
      }
      return;
    }
    if (!logic_set) fail(n, "command before set-logic");
    if (c == "declare-const") {
      if (it.size() != 3 || !it[1].is_symbol()) return fail(n, "declare-const takes a symbol and a sort");
      if (auto s = sort(it[2])) declare(n, it[1].text, {}, *s);
      return;
    }
    if (c == "declare-fun") {
      if (it.size() != 4 || !it[1].is_symbol() || !it[2].is_list()) return fail(n, "declare-fun takes a symbol, argument sorts and a sort");
      std::vector<std::string> args;
      for (const auto& a : it[2].items) {
        auto s = sort(a);
        if (!s) return;
        args.push_back(*s);
      }
      if (auto s = sort(it[3])) declare(n, it[1].text, args, *s);
      return;
    }
    if (c == "assert") {
      if (it.size() != 2) return fail(n, "assert takes one term");
      auto s = term(it[1]);
      if (s && *s != "Bool") fail(n, "asserted term is " + *s + ", not Bool");
      return;
    }
    if (c == "get-value") {
      if (it.size() != 2 || !it[1].is_list() || it[1].items.empty()) return fail(n, "get-value takes a list of terms");
      for (const auto& t : it[1].items) term(t);
      return;
    }
    fail(n, "unsupported command '" + c + "'");
  }
};

}  // namespace

std::vector<std::string> check_smtlib(const std::string& text) {
  Checker ch;
  std::vector<Node> nodes;
  try {
    nodes = sexpr::parse(text);
  } catch (const DecodeError& e) {
    return {e.what()};
  }
  for (const auto& n : nodes) ch.command(n);
  if (!ch.logic_set) ch.problems.push_back("no set-logic command");
  return ch.problems;
}

}  // namespace fsmkit
