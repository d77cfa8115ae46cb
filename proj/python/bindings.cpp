#include "fsmkit/interp_json.hpp"
#include "fsmkit/parser.hpp"
#include "fsmkit/smt.hpp"
#include "fsmkit/stable.hpp"
#include "fsmkit/transforms.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

namespace py = pybind11;
using json = nlohmann::json;
using namespace fsmkit;

namespace {

using Extents = std::map<std::string, std::string>;  // sort -> "lo..hi" or "a,b"
using Names = std::optional<std::vector<std::string>>;

std::shared_ptr<const Universe> universe_for(const Program& p, const Extents& extents, UniverseSpec spec = {}) {
  for (const auto& [sort, text] : extents) spec[sort] = parse_extent(text);
  return std::make_shared<Universe>(p.signature, spec);
}

std::vector<std::string> relative(const Program& p, const Names& c) {
  if (!c) return p.intensional;
  check_intensional(p.signature, *c);
  return *c;
}

StableMethod method_of(const std::string& m) {
  if (m == "reduct") return StableMethod::Reduct;
  if (m == "second-order") return StableMethod::SecondOrder;
  if (m == "both") return StableMethod::Both;
  throw ConfigError("unknown method '" + m + "'");
}

std::string canonical(const std::string& text) { return print_program(parse_program(text)); }

// Models go back to Python as JSON text; the wrapper decodes them.
std::string stable_models_json(const std::string& text, const Names& c, const Extents& extents,
                               const std::string& method, unsigned jobs) {
  Program p = parse_program(text);
  auto u = universe_for(p, extents);
  StableOptions opts{method_of(method), std::max(1u, jobs)};
  std::vector<Interpretation> models;
  {
    py::gil_scoped_release release;
    models = stable_models(fol_representation(p), relative(p, c), Interpretation(u), opts);
  }
  json out = json::array();
  for (const auto& m : models) out.push_back(interpretation_to_json(m));
  return out.dump();
}

bool check_stable_json(const std::string& text, const std::string& interp, const Names& c, const Extents& extents,
                       const std::string& method) {
  Program p = parse_program(text);
  json j = json::parse(interp);
  auto u = universe_for(p, extents, universe_spec_from_json(j, p.signature));
  Interpretation I = interpretation_from_json(j, u);
  if (!I.total()) throw ContractError("interpretation is not total");
  return check_stable(fol_representation(p), relative(p, c), I, method_of(method));
}

std::string completion_of(const std::string& text, const Names& c) {
  Program p = parse_program(text);
  auto cs = relative(p, c);
  return print_formula(complete(clark_normal_form(fol_representation(p), cs, p.signature), cs, p.signature));
}

std::optional<std::vector<std::string>> cycle_of(const std::string& text, const Names& c) {
  Program p = parse_program(text);
  return dependency_graph(fol_representation(p), relative(p, c)).find_cycle();
}

std::string unfold_of(const std::string& text, const Names& c) {
  Program p = parse_program(text);
  return print_formula(unfold(fol_representation(p), relative(p, c), p.signature));
}

std::string to_smt(const std::string& text, const Names& c, const Extents& extents,
                   const std::optional<std::string>& logic) {
  Program p = parse_program(text);
  auto u = universe_for(p, extents);
  SmtOptions opts;
  opts.logic = logic;
  return smt_from_program(fol_representation(p), relative(p, c), *u, opts).render();
}

bool se_refuted(const std::string& a, const std::string& b, int kmax) {
  Program p = parse_program(a), q = parse_program(b);
  py::gil_scoped_release release;
  return check_strong_equivalence_bounded(fol_representation(p), fol_representation(q), p.signature, kmax).refuted;
}

}  // namespace

PYBIND11_MODULE(_fsmkit, m) {
  m.doc() = "functional stable models on finite structures";

  auto base = py::register_exception<Error>(m, "FsmkitError");
  py::register_exception<SyntaxError>(m, "ParseError", base.ptr());
  py::register_exception<SortError>(m, "SortError", base.ptr());
  py::register_exception<FragmentError>(m, "FragmentError", base.ptr());
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());

  m.def("canonical", &canonical, py::arg("text"), "parse a program and print it back");
  m.def("stable_models_json", &stable_models_json, py::arg("text"), py::arg("relative_to") = py::none(),
        py::arg("universe") = Extents{}, py::arg("method") = "reduct", py::arg("jobs") = 1u);
  m.def("check_stable_json", &check_stable_json, py::arg("text"), py::arg("interpretation"),
        py::arg("relative_to") = py::none(), py::arg("universe") = Extents{}, py::arg("method") = "reduct");
  m.def("completion", &completion_of, py::arg("text"), py::arg("relative_to") = py::none());
  m.def("tightness_cycle", &cycle_of, py::arg("text"), py::arg("relative_to") = py::none(),
        "None when tight, else a cycle of the dependency graph");
  m.def("unfold", &unfold_of, py::arg("text"), py::arg("relative_to") = py::none());
  m.def("to_smt", &to_smt, py::arg("text"), py::arg("relative_to") = py::none(), py::arg("universe") = Extents{},
        py::arg("logic") = py::none());
  m.def("se_refuted", &se_refuted, py::arg("a"), py::arg("b"), py::arg("max_universe") = 2);
}
