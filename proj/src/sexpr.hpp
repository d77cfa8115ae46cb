#pragma once

#include "fsmkit/error.hpp"

#include <string>
#include <vector>

namespace fsmkit::sexpr {

struct Node {
  enum Kind { Atom, Quoted, String, List } kind = Atom;
  std::string text;  // atoms without quotes
  std::vector<Node> items;
  int line = 0;

  bool is_list() const { return kind == List; }
  bool is_symbol() const { return kind == Atom || kind == Quoted; }
  bool is(const std::string& s) const { return kind == Atom && text == s; }
};

/// Top-level expressions of a text. DecodeError on unbalanced input.
std::vector<Node> parse(const std::string& text);

}  // namespace fsmkit::sexpr
