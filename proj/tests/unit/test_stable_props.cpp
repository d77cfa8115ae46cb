#include <doctest.h>

#include "../support/helpers.hpp"
#include "../support/random_formulas.hpp"
#include "fsmkit/stable.hpp"

#include <algorithm>

using namespace fsmkit;
using namespace fsmkit::testing;

namespace {

/// Interpretation of the signature extended with mirrors, with every
/// predicate mirror drawn inside its original so that d < c tends to hold.
Interpretation random_mirrored(const std::shared_ptr<const Universe>& u, const std::vector<std::string>& c,
                               const std::vector<std::string>& d, std::mt19937& rng) {
  Interpretation I = random_extension(Interpretation(u), rng);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!u->signature().has_predicate(c[i])) continue;
    auto& mirror = I.predicate_table(d[i]);
    const auto& orig = I.predicate_table(c[i]);
    for (std::size_t k = 0; k < mirror.size(); ++k) mirror[k] = mirror[k] && orig[k];
  }
  return I;
}

}  // namespace

TEST_CASE("the reduct and second-order checkers agree") {
  std::mt19937 rng(101);
  int agreed = 0, stable_seen = 0;
  // Exhaustive over small signatures: the sets of stable models coincide.
  for (int i = 0; i < 120; ++i) {
    auto toy = toy_signature(1 + i % 2, false);
    FormulaGen gen{toy, rng};
    Formula F = gen.formula(1 + i % 4);
    auto c = random_subset(all_symbols(toy), rng, 1, 3);
    auto u = universe_of(toy.sig);
    auto by_reduct = stable_models(F, c, Interpretation(u), {StableMethod::Reduct, 1});
    auto by_so = stable_models(F, c, Interpretation(u), {StableMethod::SecondOrder, 1});
    CHECK_MESSAGE(by_reduct == by_so, print_formula(F));
    agreed += by_reduct == by_so;
    stable_seen += !by_reduct.empty();
  }
  // Random candidates over three-element universes with a unary function.
  for (int i = 0; i < 150; ++i) {
    auto toy = toy_signature(3, true);
    FormulaGen gen{toy, rng};
    Formula F = gen.formula(1 + i % 4);
    auto c = random_subset(all_symbols(toy), rng, 1, 2);
    auto u = universe_of(toy.sig);
    Interpretation I = random_extension(Interpretation(u), rng);
    bool r = check_stable(F, c, I, StableMethod::Reduct);
    bool s = check_stable(F, c, I, StableMethod::SecondOrder);
    CHECK_MESSAGE(r == s, print_formula(F));
    agreed += r == s;
  }
  CHECK(agreed == 270);
  CHECK(stable_seen > 20);
}

TEST_CASE("star implies the formula and agrees on negations under d < c") {
  std::mt19937 rng(202);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 150; ++i) {
    auto toy = toy_signature(2, true);
    FormulaGen gen{toy, rng};
    Formula F = gen.formula(1 + i % 4);
    auto c = random_subset(all_symbols(toy), rng, 1, 3);
    auto d = mirror_names(toy.sig, c);
    Signature ext = with_mirrors(toy.sig, c, d);
    auto u = universe_of(ext);
    Interpretation I = random_mirrored(u, c, d, rng);
    if (!satisfies(I, mirror_less(c, d, ext))) continue;
    ++checked;
    if (satisfies(I, star(F, c, d, ext))) CHECK_MESSAGE(satisfies(I, F), print_formula(F));
    Formula neg = make_not(F);
    CHECK_MESSAGE(satisfies(I, star(neg, c, d, ext)) == satisfies(I, neg), print_formula(F));
  }
  CHECK(checked >= 100);
}

TEST_CASE("star of choice pins functions and widens predicates") {
  std::mt19937 rng(303);
  for (int i = 0; i < 200; ++i) {
    auto toy = toy_signature(2, true);
    auto c = random_subset(all_symbols(toy), rng, 1, 3);
    auto d = mirror_names(toy.sig, c);
    Signature ext = with_mirrors(toy.sig, c, d);
    auto u = universe_of(ext);
    Interpretation I = random_extension(Interpretation(u), rng);
    // Oracle: compare tables directly.
    bool expected = true;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (ext.has_predicate(c[k])) {
        const auto& orig = I.predicate_table(c[k]);
        const auto& mirror = I.predicate_table(d[k]);
        for (std::size_t j = 0; j < orig.size(); ++j) expected = expected && (!orig[j] || mirror[j]);
      } else {
        expected = expected && I.function_table(c[k]) == I.function_table(d[k]);
      }
    }
    CHECK(satisfies(I, star(choice_of(c, ext), c, d, ext)) == expected);
  }
}

TEST_CASE("constraints negative on c filter stable models") {
  std::mt19937 rng(404);
  int checked = 0;
  for (int i = 0; i < 600 && checked < 150; ++i) {
    auto toy = toy_signature(1 + i % 2, false);
    FormulaGen gen{toy, rng};
    auto c = random_subset(all_symbols(toy), rng, 1, 3);
    Formula F = gen.formula(1 + i % 3);
    Formula G = i % 3 == 0 ? make_not(gen.formula(2)) : gen.formula(2);
    if (!negative_on(G, c)) continue;
    ++checked;
    auto u = universe_of(toy.sig);
    auto lhs = stable_models(make_and(F, G), c, Interpretation(u));
    std::vector<Interpretation> rhs;
    for (auto& I : stable_models(F, c, Interpretation(u)))
      if (satisfies(I, G)) rhs.push_back(I);
    CHECK_MESSAGE(lhs == rhs, print_formula(F) << "  with  " << print_formula(G));
  }
  CHECK(checked >= 100);
}

TEST_CASE("adding choice for extra symbols leaves stable models unchanged") {
  std::mt19937 rng(505);
  for (int i = 0; i < 200; ++i) {
    auto toy = toy_signature(1 + i % 2, false);
    FormulaGen gen{toy, rng};
    auto symbols = all_symbols(toy);
    std::shuffle(symbols.begin(), symbols.end(), rng);
    std::size_t split = std::uniform_int_distribution<std::size_t>(1, symbols.size() - 1)(rng);
    std::vector<std::string> c(symbols.begin(), symbols.begin() + split);
    std::vector<std::string> d(symbols.begin() + split, symbols.begin() + std::min(symbols.size(), split + 2));
    Formula F = gen.formula(1 + i % 4);
    auto u = universe_of(toy.sig);
    auto cd = c;
    cd.insert(cd.end(), d.begin(), d.end());
    auto lhs = stable_models(make_and(F, choice_of(d, toy.sig)), cd, Interpretation(u));
    auto rhs = stable_models(F, c, Interpretation(u));
    CHECK_MESSAGE(lhs == rhs, print_formula(F));
  }
}

TEST_CASE("every stable model is a model") {
  std::mt19937 rng(606);
  for (int i = 0; i < 150; ++i) {
    auto toy = toy_signature(2, false);
    FormulaGen gen{toy, rng};
    Formula F = gen.formula(1 + i % 4);
    auto c = random_subset(all_symbols(toy), rng, 1, 4);
    auto u = universe_of(toy.sig);
    auto models = classical_models(F, Interpretation(u));
    for (const auto& I : stable_models(F, c, Interpretation(u)))
      CHECK(std::find(models.begin(), models.end(), I) != models.end());
  }
}
