#include <doctest.h>

#include "../support/helpers.hpp"
#include "../support/random_formulas.hpp"
#include "fsmkit/interp.hpp"
#include "fsmkit/interp_json.hpp"

using namespace fsmkit;
using namespace fsmkit::testing;

TEST_CASE("water tank I2 is a classical model") {
  Program p = load_program("watertank.fsm");
  auto u = universe_of(p.signature);
  Interpretation I2 = interp(u, R"({"funcs": {"amt0": 5, "amt1": 8}, "preds": {"flush": false}})");
  CHECK(satisfies(I2, fol_representation(p)));
  Interpretation bad = interp(u, R"({"funcs": {"amt0": 5, "amt1": 3}, "preds": {"flush": true}})");
  CHECK_FALSE(satisfies(bad, fol_representation(p)));
}

TEST_CASE("truth and distinctness") {
  Program p = parse_program("sort d = {o}.");
  auto u = universe_of(p.signature);
  Interpretation I(u);
  CHECK(satisfies(I, make_top()));
  CHECK_FALSE(satisfies(I, parse_formula("exists X : d, Y : d (X != Y)", p.signature)));
}

TEST_CASE("enumeration counts") {
  Program p = parse_program("sort d = {u, v, w}. sort e = {m, n}. object c : d. pred p : e.");
  auto u = universe_of(p.signature);
  Interpretation only_c(u);
  only_c.init_symbol("p");
  CHECK(count_interpretations(only_c) == 3);
  CHECK(enumerate_interpretations(only_c).size() == 3);
  Interpretation only_p(u);
  only_p.init_symbol("c");
  CHECK(enumerate_interpretations(only_p).size() == 4);
  Interpretation none(u);
  auto all = enumerate_interpretations(none);
  CHECK(all.size() == 12);
  std::set<std::string> distinct;
  for (const auto& I : all) distinct.insert(interpretation_to_json(I).dump());
  CHECK(distinct.size() == 12);
}

TEST_CASE("empty open sort is a domain error") {
  Program p = parse_program("sort thing. object c : thing.");
  auto u = universe_of(p.signature);
  Interpretation I(u);
  CHECK_THROWS_AS(enumerate_interpretations(I), DomainError);
  CHECK_THROWS_AS(Universe(p.signature, {{"thing", {}}}), DomainError);
}

TEST_CASE("less_on_c") {
  Program wt = load_program("watertank.fsm");
  auto u = universe_of(wt.signature);
  Interpretation I1 = interp(u, R"({"funcs": {"amt0": 5, "amt1": 6}, "preds": {"flush": false}})");
  Interpretation J = interp(u, R"({"funcs": {"amt0": 5, "amt1": 3}, "preds": {"flush": false}})");
  CHECK_FALSE(less_on_c(I1, I1, {"amt1"}));
  CHECK(less_on_c(J, I1, {"amt1"}));
  CHECK_FALSE(less_on_c(J, I1, {"flush"}));

  Program pp = parse_program("sort s = {a, b}. pred p : s.");
  auto up = universe_of(pp.signature);
  Interpretation Ip = interp(up, R"({"preds": {"p": []}})");
  Interpretation Jp = interp(up, R"({"preds": {"p": [["a"]]}})");
  CHECK_FALSE(less_on_c(Jp, Ip, {"p"}));
  CHECK(less_on_c(Ip, Jp, {"p"}));

  Program other = parse_program("sort s = {a, b, c}. pred p : s.");
  Interpretation K(universe_of(other.signature));
  K.init_symbol("p");
  CHECK_THROWS_AS(less_on_c(K, Ip, {"p"}), ContractError);
}

TEST_CASE("out-of-range arithmetic makes atoms false") {
  Program p = parse_program("sort level = 0..2. func next : level -> level. object a : level.");
  auto u = universe_of(p.signature);
  Interpretation I = interp(u, R"({"funcs": {"a": 2, "next": {"0": 1, "1": 2, "2": 2}}})");
  CHECK_FALSE(satisfies(I, parse_formula("next(a + 1) = 2", p.signature)));
  CHECK(satisfies(I, parse_formula("not next(a + 1) = 2", p.signature)));
  CHECK(satisfies(I, parse_formula("a + 1 = 3", p.signature)));
  CHECK_THROWS_AS(satisfies(I, parse_formula("a / 0 = 1", p.signature)), EvaluationError);
}

TEST_CASE("json round trip") {
  Program p = parse_program("sort d = 1..2. func f : d * d -> d. pred r : d. pred q. object c : real. sort x.");
  auto u = universe_of(p.signature, {{"real", {Value::number(Rational(7, 2)), Value::integer(1)}}, {"x", {Value::name("k")}}});
  Interpretation I = interp(u, R"({"funcs": {"c": "7/2", "f": {"1,1": 2, "1,2": 1, "2,1": 1, "2,2": 2}},
                                   "preds": {"r": [[2]], "q": true}})");
  auto j = interpretation_to_json(I);
  CHECK(j["funcs"]["c"] == "7/2");
  CHECK(j["universe"]["x"] == nlohmann::json::array({"k"}));
  Interpretation again = interpretation_from_json(j, u);
  CHECK(again == I);
  CHECK_THROWS_AS(interp(u, R"({"funcs": {"f": {"1,1": 2}}})"), DecodeError);
  CHECK_THROWS_AS(interp(u, R"({"funcs": {"c": 9}})"), DomainError);
}

TEST_CASE("satisfaction agrees with a direct truth table on ground quantifier-free formulas") {
  // Oracle: evaluate each atom once, then the connectives over a lookup table.
  std::mt19937 rng(5);
  auto toy = toy_signature(2, false);
  auto u = universe_of(toy.sig);
  FormulaGen gen{toy, rng};
  gen.quantifiers = false;
  gen.choice = false;
  Interpretation empty(u);
  auto all = enumerate_interpretations(empty);
  for (int i = 0; i < 200; ++i) {
    Formula f = gen.formula(3);
    const Interpretation& I = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
    std::function<bool(const Formula&)> table = [&](const Formula& g) -> bool {
      switch (g->kind) {
        case FormulaKind::Bottom: return false;
        case FormulaKind::And: return table(g->a) && table(g->b);
        case FormulaKind::Or: return table(g->a) || table(g->b);
        case FormulaKind::Implies: return !table(g->a) || table(g->b);
        case FormulaKind::Equal: {
          Env env;
          auto l = eval_term(I, g->terms[0], env);
          auto r = eval_term(I, g->terms[1], env);
          return l && r && *l == *r;
        }
        case FormulaKind::Atom: {
          std::vector<Value> args;
          Env env;
          for (const auto& t : g->terms) args.push_back(*eval_term(I, t, env));
          return I.predicate_value(g->name, args);
        }
        default: return false;
      }
    };
    CHECK(satisfies(I, f) == table(f));
  }
}
