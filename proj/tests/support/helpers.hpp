#pragma once

#include "fsmkit/interp_json.hpp"
#include "fsmkit/parser.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace fsmkit::testing {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

#ifdef FSMKIT_PROGRAMS_DIR
inline Program load_program(const std::string& name) {
  return parse_program(slurp(std::string(FSMKIT_PROGRAMS_DIR) + "/" + name), name);
}
#endif

inline std::shared_ptr<const Universe> universe_of(const Signature& sig, const UniverseSpec& spec = {}) {
  return std::make_shared<Universe>(sig, spec);
}

/// Interpretation from a JSON literal such as
/// {"funcs": {"amt0": 5}, "preds": {"flush": false}}.
inline Interpretation interp(const std::shared_ptr<const Universe>& u, const std::string& json_text) {
  return interpretation_from_json(nlohmann::json::parse(json_text), u);
}

inline std::vector<Interpretation> sorted(std::vector<Interpretation> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace fsmkit::testing

namespace fsmkit::testing {

/// Uniformly random total extension of `fixed`.
template <class Rng>
Interpretation random_extension(const Interpretation& fixed, Rng& rng) {
  Interpretation out = fixed;
  auto missing = fixed.missing_symbols();
  for (const auto& s : missing) out.init_symbol(s);
  CellOdometer odo(free_cells(fixed.universe(), missing));
  auto n = odo.count();
  if (!n || *n == 0) throw std::runtime_error("extension space too large");
  odo.seek(std::uniform_int_distribution<std::uint64_t>(0, *n - 1)(rng));
  odo.write(out);
  return out;
}

}  // namespace fsmkit::testing
