#pragma once

// Two-sorted sentences and the fixed sort predicates of the unsorted side.

#include "fsmkit/sorts.hpp"

#include <random>
#include <set>
#include <string>
#include <vector>

namespace fsmkit::testing {


inline const char* kTwoSorts =
    "sort d = 1..2.\n"
    "sort e = {k}.\n"
    "func a : d.\n"
    "func b : e.\n"
    "pred q.\n"
    "pred p : d.\n"
    "pred r : e.\n";

// Sentences over kTwoSorts, built as text.
struct TwoSortGen {
  std::mt19937& rng;
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  std::string dterm(const std::vector<std::string>& dv) {
    int k = pick(3 + (dv.empty() ? 0 : 1));
    if (k == 0) return "a";
    if (k == 1) return "1";
    if (k == 2) return "2";
    return dv[pick(static_cast<int>(dv.size()))];
  }
  std::string eterm(const std::vector<std::string>& ev) {
    int k = pick(2 + (ev.empty() ? 0 : 1));
    if (k == 0) return "b";
    if (k == 1) return "k";
    return ev[pick(static_cast<int>(ev.size()))];
  }
  std::string atom(const std::vector<std::string>& dv, const std::vector<std::string>& ev) {
    switch (pick(6)) {
      case 0: return "q";
      case 1: return "p(" + dterm(dv) + ")";
      case 2: return "r(" + eterm(ev) + ")";
      case 3: return dterm(dv) + " = " + dterm(dv);
      case 4: return eterm(ev) + " = " + eterm(ev);
      default: return "false";
    }
  }
  std::string formula(int depth, std::vector<std::string> dv, std::vector<std::string> ev) {
    if (depth == 0 || pick(4) == 0) {
      std::string a = atom(dv, ev);
      return pick(5) == 0 && a != "false" ? "{" + a + "}" : a;
    }
    switch (pick(6)) {
      case 0: return "(" + formula(depth - 1, dv, ev) + " & " + formula(depth - 1, dv, ev) + ")";
      case 1: return "(" + formula(depth - 1, dv, ev) + " | " + formula(depth - 1, dv, ev) + ")";
      case 2: return "(" + formula(depth - 1, dv, ev) + " -> " + formula(depth - 1, dv, ev) + ")";
      case 3: return "not " + formula(depth - 1, dv, ev);
      case 4: {
        std::string x = "X" + std::to_string(dv.size());
        dv.push_back(x);
        return std::string(pick(2) ? "forall " : "exists ") + x + " : d (" + formula(depth - 1, dv, ev) + ")";
      }
      default: {
        std::string z = "Z" + std::to_string(ev.size());
        ev.push_back(z);
        return std::string(pick(2) ? "forall " : "exists ") + z + " : e (" + formula(depth - 1, dv, ev) + ")";
      }
    }
  }
};

inline std::vector<std::string> coin_subset(const std::vector<std::string>& all, std::mt19937& rng) {
  std::vector<std::string> out;
  for (const auto& s : all)
    if (rng() % 2) out.push_back(s);
  return out;
}

// L0 over the unsorted signature: the merged universe with the sort
// predicates set to the declared extents; everything else varies.
inline Interpretation fixed_sorts(const Desorted& d, const Universe& original) {
  std::set<Value> merged;
  for (const auto& s : d.sorts) merged.insert(original.extent(s).begin(), original.extent(s).end());
  UniverseSpec spec{{d.universe_sort, std::vector<Value>(merged.begin(), merged.end())}};
  for (const auto& s : {kIntSort, kRealSort})
    if (d.predicate_of.count(s)) spec[s] = original.extent(s);
  Interpretation L(std::make_shared<Universe>(d.signature, spec));
  for (const auto& s : d.sorts) {
    L.init_symbol(d.predicate_of.at(s));
    for (const auto& v : original.extent(s)) L.set_predicate(d.predicate_of.at(s), {v}, true);
  }
  return L;
}

}  // namespace fsmkit::testing
