#include <doctest.h>

#include "../support/helpers.hpp"
#include "../support/random_formulas.hpp"
#include "fsmkit/related.hpp"
#include "fsmkit/smt.hpp"
#include "fsmkit/stable.hpp"

#include <algorithm>
#include <set>

using namespace fsmkit;
using namespace fsmkit::testing;

#include "../support/related_gen.hpp"

// ---------------------------------------------------------------------------
// Causal theories

TEST_CASE("causal translation of definite rules") {
  Program t = parse_program("sort d = 1..3.\nobject f : d.\npred p, q.\nintensional f.\nf = 1 :- p.\n:- q.\n2 = f.\n");
  Formula tr = causal_translate(t);
  CHECK(print_formula(tr) == "(not not p -> f = 1) & not q & f = 2");

  Program bad = parse_program("sort d = 1..3.\nobject f, g : d.\nintensional f, g.\nf = g :- true.\n");
  CHECK_THROWS_AS(causal_translate(bad), FragmentError);
  Program neg = parse_program("sort d = 1..3.\nobject f : d.\nintensional f.\nnot f = 1.\n");
  CHECK_THROWS_AS(causal_translate(neg), FragmentError);
  Program pred = parse_program("pred p.\nintensional p.\np.\n");
  CHECK_THROWS_AS(causal_translate(pred), ContractError);
}

TEST_CASE("a non-definite theory with a causal model but no stable model") {
  Program t = parse_program("sort d = 1..3.\nobject f : d.\nintensional f.\nnot f = 1.\nnot f = 2.\n");
  auto u = universe_of(t.signature);
  CHECK(cm_check(t, {"f"}, interp(u, R"({"funcs": {"f": 3}})")));
  CHECK_FALSE(cm_check(t, {"f"}, interp(u, R"({"funcs": {"f": 1}})")));
  CHECK(causal_models(t, {"f"}, Interpretation(u)).size() == 1);
  Formula tr = parse_formula("not f = 1 & not f = 2", t.signature);
  CHECK(stable_models(tr, {"f"}, Interpretation(u)).empty());
}

TEST_CASE("switch domain: five causal models, four stable models") {
  Program causal = load_program("switch_causal.fsm");
  Program prog = load_program("switch.fsm");
  auto cu = universe_of(causal.signature);
  auto pu = universe_of(prog.signature);

  auto cm = causal_models(causal, causal.intensional, Interpretation(cu));
  CHECK(std::set<Interpretation>(cm.begin(), cm.end()) == rows(cu, {0, 1, 2, 3, 4}));
  auto sm = stable_models(fol_representation(prog), prog.intensional, Interpretation(pu));
  CHECK(std::set<Interpretation>(sm.begin(), sm.end()) == rows(pu, {0, 1, 2, 3}));

  Interpretation i5 = switch_interp(pu, kRows[4]);
  CHECK_FALSE(check_stable(fol_representation(prog), prog.intensional, i5));
  // The causal theory is definite; its translation has the same five models.
  auto tr = stable_models(causal_translate(causal), causal.intensional, Interpretation(cu));
  CHECK(std::set<Interpretation>(tr.begin(), tr.end()) == rows(cu, {0, 1, 2, 3, 4}));
}

TEST_CASE("causal models of definite theories are the stable models of their translation") {
  std::mt19937 rng(1101);
  int instances = 0;
  std::uint64_t checks = 0, models = 0;
  for (; instances < 100; ++instances) {
    const bool unary = instances % 3 == 0;
    ToySignature toy = toy_signature(2, unary);
    FormulaGen gen{toy, rng};
    gen.choice = false;
    std::vector<std::string> f{"a", "b"};
    if (unary) f.push_back("f");
    std::vector<Rule> rules;
    for (int i = 1 + gen.pick(3); i > 0; --i) {
      VarList scope{{"V", toy.sort}};
      Formula body = gen.formula(2, scope);
      Formula head = gen.coin(0.15) ? make_bottom() : function_head(gen, f, scope);
      rules.push_back(make_rule(head, body));
    }
    Program t = toy_program(toy, rules, f);
    Formula tr = causal_translate(t);
    auto u = universe_of(toy.sig);
    for_each_interpretation(Interpretation(u), [&](const Interpretation& I) {
      const bool cm = cm_check(t, f, I);
      CHECK_MESSAGE(cm == check_stable(tr, f, I), print_formula(fol_representation(t)));
      ++checks;
      models += cm;
      return true;
    });
  }
  CHECK(instances == 100);
  CHECK(checks > 10000);
  CHECK(models > 50);
}

// ---------------------------------------------------------------------------
// IF-programs

TEST_CASE("IF example with a constant outside every head") {
  Program p = parse_program("sort num = 1..2.\nobject c, d : num.\nintensional c, d.\nd = 2 :- c = 1.\nd = 1.\n");
  auto u = universe_of(p.signature);
  Interpretation I = interp(u, R"({"funcs": {"c": 2, "d": 1}})");
  CHECK(if_check(p, {"c", "d"}, I));
  CHECK_FALSE(check_stable(fol_representation(p), {"c", "d"}, I));
}

TEST_CASE("IF example without IF models") {
  Program p = parse_program("sort num = 1..3.\nobject c, d : num.\nintensional c, d.\nc = 1 | d = 1.\nc = 2 | d = 2.\n");
  auto u = universe_of(p.signature);
  Formula F = fol_representation(p);
  std::set<Interpretation> sm;
  for (const auto& I : stable_models(F, {"c", "d"}, Interpretation(u))) sm.insert(I);
  CHECK(sm == std::set<Interpretation>{interp(u, R"({"funcs": {"c": 1, "d": 2}})"),
                                       interp(u, R"({"funcs": {"c": 2, "d": 1}})")});
  int if_models = 0;
  for_each_interpretation(Interpretation(u), [&](const Interpretation& I) {
    if_models += if_check(p, {"c", "d"}, I);
    return true;
  });
  CHECK(if_models == 0);
}

TEST_CASE("IF distinguishes a negated fact from a constraint") {
  Program f1 = parse_program("sort d = 1..2.\nobject c : d.\nintensional c.\nnot c = 1.\n");
  Program f2 = parse_program("sort d = 1..2.\nobject c : d.\nintensional c.\n:- c = 1.\n");
  auto u = universe_of(f1.signature);
  Interpretation I = interp(u, R"({"funcs": {"c": 2}})");
  CHECK_FALSE(if_check(f1, {"c"}, I));
  CHECK(if_check(f2, {"c"}, I));
  CHECK(stable_models(fol_representation(f1), {"c"}, Interpretation(u)).empty());
  CHECK(stable_models(fol_representation(f2), {"c"}, Interpretation(u)).empty());

  Program arrow = parse_program("sort d = 1..2.\nobject c : d.\nintensional c.\nc = 1 :- (c = 2 -> c = 1).\n");
  CHECK_THROWS_AS(if_check(arrow, {"c"}, I), FragmentError);
}

TEST_CASE("IF and SM agree on rules f(t) = t1 <- not not B") {
  std::mt19937 rng(1201);
  int instances = 0;
  std::uint64_t models = 0;
  for (; instances < 100; ++instances) {
    const bool unary = instances % 3 == 0;
    ToySignature toy = toy_signature(2, unary);
    FormulaGen gen{toy, rng};
    std::vector<std::string> f{"a", "b"};
    if (unary) f.push_back("f");
    std::vector<Rule> rules;
    for (int i = 1 + gen.pick(3); i > 0; --i) {
      VarList scope{{"V", toy.sort}};
      Formula body = make_not(make_not(without_arrows(gen.formula(2, scope))));
      rules.push_back(make_rule(function_head(gen, f, scope), body));
    }
    Program p = toy_program(toy, rules, f);
    Formula F = fol_representation(p);
    auto u = universe_of(toy.sig);
    for_each_interpretation(Interpretation(u), [&](const Interpretation& I) {
      const bool ok = if_check(p, f, I);
      CHECK_MESSAGE(ok == check_stable(F, f, I), print_formula(F));
      models += ok;
      return true;
    });
  }
  CHECK(instances == 100);
  CHECK(models > 50);
}

// ---------------------------------------------------------------------------
// Clingcon

TEST_CASE("clingcon water tank") {
  Program p = parse_program(
      "object amt0, amt1 : int.\npred flush.\n"
      ":- not flush, not amt1 = amt0 + 1.\n"
      ":- flush, not amt1 = 0.\n");
  ConstraintProgram cp = constraint_program(p);
  CHECK(cp.atoms == std::vector<std::string>{"flush"});
  CHECK(cp.variables == std::vector<std::string>{"amt0", "amt1"});
  std::vector<Value> slice;
  for (int i = 0; i <= 10; ++i) slice.push_back(Value::integer(i));
  auto u = universe_of(p.signature, {{kIntSort, slice}});
  Interpretation If(u);
  If.init_symbol("amt0");
  If.init_symbol("amt1");
  If.set_function("amt0", {}, Value::integer(5));
  If.set_function("amt1", {}, Value::integer(6));
  CHECK(clingcon_answer_sets(cp, If) == std::vector<AtomSet>{AtomSet{}});
  If.set_function("amt1", {}, Value::integer(0));
  CHECK(clingcon_answer_sets(cp, If).empty());

  BackgroundTheory bg{BackgroundKind::Integers, {{kIntSort, slice}}};
  If.set_function("amt1", {}, Value::integer(6));
  CHECK(t_stable_check(cp.formula, cp.atoms, with_atoms(If, cp.atoms, {}), bg));
}

TEST_CASE("clingcon corner cases") {
  Program empty = parse_program("pred p.\nobject x : int.\n");
  auto u = universe_of(empty.signature, {{kIntSort, {Value::integer(0)}}});
  Interpretation If(u);
  If.init_symbol("x");
  CHECK(clingcon_answer_sets(constraint_program(empty), If) == std::vector<AtomSet>{AtomSet{}});

  Program chain = parse_program("pred p, q.\nobject x : int.\np :- x > 0.\nq :- p, not x = 3.\n");
  auto cu = universe_of(chain.signature, {{kIntSort, {Value::integer(1), Value::integer(3)}}});
  Interpretation Jf(cu);
  Jf.init_symbol("x");
  Jf.set_function("x", {}, Value::integer(1));
  CHECK(clingcon_answer_sets(constraint_program(chain), Jf) == std::vector<AtomSet>{AtomSet{"p", "q"}});
  Jf.set_function("x", {}, Value::integer(3));
  CHECK(clingcon_answer_sets(constraint_program(chain), Jf) == std::vector<AtomSet>{AtomSet{"p"}});

  CHECK_THROWS_AS(constraint_program(parse_program("sort d = 1..2.\npred p : d.\np(1).\n")), FragmentError);
  CHECK_THROWS_AS(constraint_program(parse_program("pred p, q.\np :- (q -> p).\n")), FragmentError);
}

TEST_CASE("constraint answer sets are the T-stable models relative to the atoms") {
  std::mt19937 rng(1401);
  const std::vector<Value> slice{Value::integer(0), Value::integer(1), Value::integer(2)};
  BackgroundTheory bg{BackgroundKind::Integers, {{kIntSort, slice}}};
  ConstraintGen gen{rng};
  std::size_t answer_sets = 0, checks = 0;
  for (int n = 0; n < 100; ++n) {
    Program p = parse_program(gen.program(2 + gen.pick(4)));
    ConstraintProgram cp = constraint_program(p);
    auto u = universe_of(p.signature, {{kIntSort, slice}});
    for (const auto& If : valuations(cp, u)) {
      auto sets = clingcon_answer_sets(cp, If);
      answer_sets += sets.size();
      for (const auto& x : all_subsets(cp.atoms)) {
        const bool listed = std::find(sets.begin(), sets.end(), x) != sets.end();
        CHECK_MESSAGE(listed == t_stable_check(cp.formula, cp.atoms, with_atoms(If, cp.atoms, x), bg),
                      print_formula(cp.formula));
        ++checks;
      }
    }
  }
  CHECK(checks == 100 * 9 * 8);
  CHECK(answer_sets > 0);
}

// ---------------------------------------------------------------------------
// ASP(LC)

TEST_CASE("ASP(LC) answer set with a linear-constraint witness") {
  Program p = parse_program(
      "object x, y, z : int.\npred a, b, c.\n"
      "a :- x - z > 0.\nb :- x - y <= 0.\nc :- b, y - z <= 0.\n:- not a.\nb :- c.\n");
  ConstraintProgram cp = constraint_program(p);
  auto atoms = theory_atoms(cp);
  REQUIRE(atoms.size() == 3);
  std::vector<Value> slice{Value::integer(0), Value::integer(1), Value::integer(2)};
  CHECK(ljn_answer_check(cp, {"a"}, {atoms[0]}, slice));
  CHECK_FALSE(ljn_answer_check(cp, {}, {}, slice));
  CHECK_FALSE(ljn_answer_check(cp, {"a", "b"}, {atoms[0]}, slice));
  // x - z > 0 together with x - y <= 0 and y - z <= 0 has no solution.
  CHECK_FALSE(ljn_answer_check(cp, {"a", "b", "c"}, atoms, slice));
  CHECK_THROWS_AS(ljn_answer_check(cp, {"a"}, {atoms[0]}, {}), ConfigError);

  auto u = universe_of(p.signature, {{kIntSort, slice}});
  Interpretation I = interp(u, R"({"funcs": {"x": 2, "y": 1, "z": 0}, "preds": {"a": true, "b": false, "c": false}})");
  CHECK(check_stable(cp.formula, cp.atoms, I));
  CHECK(theory_atoms_true(cp, I).size() == 1);

  CHECK_THROWS_AS(theory_atoms(constraint_program(parse_program("object x : int.\npred a.\na :- x * x > 1.\n"))),
                  FragmentError);
  CHECK_THROWS_AS(theory_atoms(constraint_program(parse_program("object x : int.\npred a.\na :- not x > 1.\n"))),
                  FragmentError);
}

TEST_CASE("LJN answer sets correspond to stable models") {
  std::mt19937 rng(1501);
  const std::vector<Value> slice{Value::integer(0), Value::integer(1), Value::integer(2)};
  ConstraintGen gen{rng, true};
  std::size_t agreements = 0;
  for (int n = 0; n < 100; ++n) {
    Program p = parse_program(gen.program(2 + gen.pick(4)));
    ConstraintProgram cp = constraint_program(p);
    auto u = universe_of(p.signature, {{kIntSort, slice}});
    auto theory = theory_atoms(cp);
    auto vals = valuations(cp, u);
    for (const auto& If : vals) {
      auto t = theory_atoms_true(cp, If);
      for (const auto& x : all_subsets(cp.atoms)) {
        const bool sm = check_stable(cp.formula, cp.atoms, with_atoms(If, cp.atoms, x));
        CHECK_MESSAGE(ljn_answer_check(cp, x, t, slice) == sm, print_formula(cp.formula));
        agreements += sm;
      }
    }
    // Every LJN-answer set (X, T) gives stable models for all I^f with exactly T.
    for (unsigned bits = 0; bits < (1u << theory.size()); ++bits) {
      std::vector<Formula> t;
      for (std::size_t i = 0; i < theory.size(); ++i)
        if (bits >> i & 1u) t.push_back(theory[i]);
      for (const auto& x : all_subsets(cp.atoms)) {
        if (!ljn_answer_check(cp, x, t, slice)) continue;
        for (const auto& If : vals) {
          auto ti = theory_atoms_true(cp, If);
          bool match = ti.size() == t.size();
          for (std::size_t i = 0; match && i < t.size(); ++i) match = same_formula(ti[i], t[i]);
          if (match) CHECK(check_stable(cp.formula, cp.atoms, with_atoms(If, cp.atoms, x)));
        }
      }
    }
  }
  CHECK(agreements > 0);
}

// ---------------------------------------------------------------------------
// Lin-Wang programs

TEST_CASE("Lin-Wang functional reduct") {
  Program p = parse_program("sort s = {a, b}.\nfunc f : s -> s.\npred p : s.\np(f(a)).\n");
  auto u = universe_of(p.signature);
  Interpretation I = interp(u, R"({"funcs": {"f": {"a": "a", "b": "a"}}, "preds": {"p": ["a"]}})");
  CHECK(lw_reduct(p, I) == std::vector<std::string>{"p(a)."});
  CHECK(lw_answer_check(p, I));
  Interpretation J = interp(u, R"({"funcs": {"f": {"a": "a", "b": "a"}}, "preds": {"p": ["a", "b"]}})");
  CHECK_FALSE(lw_answer_check(p, J));

  Program q = parse_program(
      "sort s = {a, b}.\nfunc f : s -> s.\npred p : s.\npred r.\n"
      "r :- f(a) != f(a).\np(b) :- f(a) = b.\np(a) :- not r, f(b) = a.\n");
  auto qu = universe_of(q.signature);
  Interpretation K = interp(qu, R"({"funcs": {"f": {"a": "a", "b": "a"}}, "preds": {"p": ["a"], "r": false}})");
  CHECK(lw_reduct(q, K) == std::vector<std::string>{"p(a)."});
  CHECK(lw_answer_check(q, K));

  Program ranged = parse_program("sort d = 1..2.\nobject c : d.\npred p : d.\np(c).\n");
  auto ru = universe_of(ranged.signature);
  Interpretation R = interp(ru, R"({"funcs": {"c": 1}, "preds": {"p": [1]}})");
  CHECK_FALSE(is_p_interpretation(ranged, R));
  CHECK_THROWS_AS(lw_answer_check(ranged, R), ContractError);
}

TEST_CASE("Lin-Wang answer sets are stable models relative to all predicates") {
  std::mt19937 rng(1601);
  LwGen gen{rng};
  std::size_t answers = 0;
  for (int n = 0; n < 100; ++n) {
    Program p = parse_program(gen.program(2 + gen.pick(4)));
    Formula F = fol_representation(p);
    auto preds = p.signature.user_predicates();
    auto u = universe_of(p.signature);
    for_each_interpretation(Interpretation(u), [&](const Interpretation& I) {
      const bool lw = lw_answer_check(p, I);
      CHECK_MESSAGE(lw == check_stable(F, preds, I), print_program(p));
      answers += lw;
      return true;
    });
  }
  CHECK(answers > 0);
}
