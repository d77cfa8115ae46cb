#pragma once

#include "fsmkit/interp.hpp"

#include <json.hpp>

namespace fsmkit {

/// Integers that fit in 64 bits become JSON numbers; other numbers are
/// "p/q" strings and names are plain strings.
nlohmann::json value_to_json(const Value& v);
Value value_from_json(const nlohmann::json& j);

/// {"universe": {sort: [...]}, "funcs": {f: value | {"a,b": value}},
///  "preds": {p: bool | [[a, b], ...]}} with symbols and tuples in canonical order.
nlohmann::json interpretation_to_json(const Interpretation& I);

/// Universe entries for open sorts and numeric slices found in `j["universe"]`.
UniverseSpec universe_spec_from_json(const nlohmann::json& j, const Signature& sig);

/// Reads the tables of `j` over universe `u`; symbols absent from `j` stay
/// missing. Throws DomainError on values outside their sorts.
Interpretation interpretation_from_json(const nlohmann::json& j, std::shared_ptr<const Universe> u);

}  // namespace fsmkit
