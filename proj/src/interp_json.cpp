#include "fsmkit/interp_json.hpp"

namespace fsmkit {

using nlohmann::json;

json value_to_json(const Value& v) {
  if (auto i = v.as_small_integer()) return *i;
  return v.to_string();
}

Value value_from_json(const json& j) {
  if (j.is_number_integer()) return Value::integer(j.get<std::int64_t>());
  if (j.is_boolean()) return Value::boolean(j.get<bool>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (auto q = parse_rational(s)) return Value::number(*q);
    return Value::name(s);
  }
  if (j.is_number_float()) throw DecodeError("floating-point value " + j.dump() + " (write numbers exactly, e.g. \"7/2\")");
  throw DecodeError("cannot read a universe element from " + j.dump());
}

namespace {

std::string key_of(const std::vector<Value>& args) {
  std::string k;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) k += ",";
    k += args[i].to_string();
  }
  return k;
}

std::vector<Value> args_of_key(const std::string& key) {
  std::vector<Value> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = key.find(',', start);
    std::string item = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (auto q = parse_rational(item)) out.push_back(Value::number(*q));
    else out.push_back(Value::name(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

json interpretation_to_json(const Interpretation& I) {
  const Universe& u = I.universe();
  const Signature& sig = I.signature();
  json out;
  json uni = json::object();
  for (const auto& s : sig.user_sorts()) {
    if (!u.has_extent(s)) continue;
    json arr = json::array();
    for (const auto& v : u.extent(s)) arr.push_back(value_to_json(v));
    uni[s] = arr;
  }
  for (const auto& s : {kIntSort, kRealSort}) {
    if (!u.has_extent(s)) continue;
    json arr = json::array();
    for (const auto& v : u.extent(s)) arr.push_back(value_to_json(v));
    uni[s] = arr;
  }
  out["universe"] = uni;
  json funcs = json::object();
  for (const auto& f : I.function_symbols()) {
    const FunctionInfo& info = sig.function(f);
    const auto& table = I.function_table(f);
    if (info.args.empty()) {
      funcs[f] = value_to_json(table.at(0));
      continue;
    }
    json m = json::object();
    for (std::size_t k = 0; k < table.size(); ++k) m[key_of(u.args_of(info.args, k))] = value_to_json(table[k]);
    funcs[f] = m;
  }
  out["funcs"] = funcs;
  json preds = json::object();
  for (const auto& p : I.predicate_symbols()) {
    const PredicateInfo& info = sig.predicate(p);
    const auto& table = I.predicate_table(p);
    if (info.args.empty()) {
      preds[p] = table.at(0) != 0;
      continue;
    }
    json arr = json::array();
    for (std::size_t k = 0; k < table.size(); ++k) {
      if (!table[k]) continue;
      json tuple = json::array();
      for (const auto& v : u.args_of(info.args, k)) tuple.push_back(value_to_json(v));
      arr.push_back(tuple);
    }
    preds[p] = arr;
  }
  out["preds"] = preds;
  return out;
}

UniverseSpec universe_spec_from_json(const json& j, const Signature& sig) {
  UniverseSpec spec;
  if (!j.contains("universe")) return spec;
  for (const auto& [sort, arr] : j["universe"].items()) {
    if (!sig.has_sort(sort)) throw DecodeError("universe lists unknown sort '" + sort + "'");
    if (sig.sort(sort).fixed_extent()) continue;
    std::vector<Value> values;
    for (const auto& v : arr) values.push_back(value_from_json(v));
    spec[sort] = values;
  }
  return spec;
}

Interpretation interpretation_from_json(const json& j, std::shared_ptr<const Universe> u) {
  Interpretation I(u);
  const Signature& sig = u->signature();
  if (j.contains("funcs")) {
    for (const auto& [name, val] : j["funcs"].items()) {
      if (!sig.has_function(name)) throw DecodeError("unknown function constant '" + name + "'");
      const FunctionInfo& info = sig.function(name);
      if (info.args.empty()) {
        I.set_function(name, {}, value_from_json(val));
        continue;
      }
      if (!val.is_object()) throw DecodeError("table for " + name + " must be an object of \"args\": value");
      I.init_symbol(name);
      std::size_t seen = 0;
      for (const auto& [key, v] : val.items()) {
        auto args = args_of_key(key);
        if (args.size() != info.arity()) throw DecodeError("key '" + key + "' has the wrong arity for " + name);
        I.set_function(name, args, value_from_json(v));
        ++seen;
      }
      if (seen != u->cell_count(info.args))
        throw DecodeError("table for " + name + " is not total (" + std::to_string(seen) + " of " +
                          std::to_string(u->cell_count(info.args)) + " entries)");
    }
  }
  if (j.contains("preds")) {
    for (const auto& [name, val] : j["preds"].items()) {
      if (!sig.has_predicate(name)) throw DecodeError("unknown predicate constant '" + name + "'");
      const PredicateInfo& info = sig.predicate(name);
      I.init_symbol(name);
      if (info.args.empty()) {
        if (!val.is_boolean()) throw DecodeError("propositional constant " + name + " needs true or false");
        I.set_predicate(name, {}, val.get<bool>());
        continue;
      }
      for (const auto& tuple : val) {
        std::vector<Value> args;
        if (tuple.is_array()) {
          for (const auto& v : tuple) args.push_back(value_from_json(v));
        } else {
          args.push_back(value_from_json(tuple));
        }
        if (args.size() != info.arity()) throw DecodeError("tuple " + tuple.dump() + " has the wrong arity for " + name);
        I.set_predicate(name, args, true);
      }
    }
  }
  return I;
}

}  // namespace fsmkit
