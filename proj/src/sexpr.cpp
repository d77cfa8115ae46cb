#include "sexpr.hpp"

#include <cctype>

namespace fsmkit::sexpr {

namespace {

struct Reader {
  const std::string& s;
  std::size_t i = 0;
  int line = 1;

  void skip() {
    while (i < s.size()) {
      if (s[i] == '\n') {
        ++line;
        ++i;
      } else if (std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      } else if (s[i] == ';') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else {
        break;
      }
    }
  }

  Node read() {
    skip();
    if (i >= s.size()) throw DecodeError("unexpected end of input");
    Node n;
    n.line = line;
    char ch = s[i];
    if (ch == '(') {
      ++i;
      n.kind = Node::List;
      while (true) {
        skip();
        if (i >= s.size()) throw DecodeError("unclosed '(' opened on line " + std::to_string(n.line));
        if (s[i] == ')') {
          ++i;
          return n;
        }
        n.items.push_back(read());
      }
    }
    if (ch == ')') throw DecodeError("unexpected ')' on line " + std::to_string(line));
    if (ch == '|') {
      std::size_t end = s.find('|', i + 1);
      if (end == std::string::npos) throw DecodeError("unclosed quoted symbol on line " + std::to_string(line));
      n.kind = Node::Quoted;
      n.text = s.substr(i + 1, end - i - 1);
      for (char c : n.text)
        if (c == '\n') ++line;
      i = end + 1;
      return n;
    }
    if (ch == '"') {
      std::size_t j = i + 1;
      while (true) {
        if (j >= s.size()) throw DecodeError("unclosed string on line " + std::to_string(line));
        if (s[j] == '"') {
          if (j + 1 < s.size() && s[j + 1] == '"') {
            n.text += '"';
            j += 2;
            continue;
          }
          break;
        }
        if (s[j] == '\n') ++line;
        n.text += s[j++];
      }
      n.kind = Node::String;
      i = j + 1;
      return n;
    }
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '(' && s[j] != ')' &&
           s[j] != ';' && s[j] != '|' && s[j] != '"')
      ++j;
    n.text = s.substr(i, j - i);
    i = j;
    return n;
  }
};

}  // namespace

std::vector<Node> parse(const std::string& text) {
  Reader r{text};
  std::vector<Node> out;
  while (true) {
    r.skip();
    if (r.i >= text.size()) return out;
    out.push_back(r.read());
  }
}

}  // namespace fsmkit::sexpr
