#include "gpk/sexpr.hpp"

#include <cctype>

#include "gpk/error.hpp"

namespace gpk {

namespace {

struct Reader {
  const std::string& text;
  size_t i = 0;
  int line = 1, col = 1;

  explicit Reader(const std::string& t) : text(t) {}

  bool done() const { return i >= text.size(); }
  char peek() const { return text[i]; }

  void advance() {
    if (text[i] == '\n') { ++line; col = 1; }
    else ++col;
    ++i;
  }

  void skip_space() {
    while (!done()) {
      char c = peek();
      if (c == ';') {
        while (!done() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Sexpr read() {
    skip_space();
    if (done()) throw ParseError("unexpected end of input", line, col);
    Sexpr e;
    e.line = line;
    e.col = col;
    char c = peek();
    if (c == '(') {
      advance();
      e.kind = Sexpr::Kind::list;
      for (;;) {
        skip_space();
        if (done()) throw ParseError("unclosed parenthesis", e.line, e.col);
        if (peek() == ')') { advance(); break; }
        e.items.push_back(read());
      }
      return e;
    }
    if (c == ')') throw ParseError("unexpected ')'", line, col);
    e.kind = Sexpr::Kind::atom;
    while (!done()) {
      c = peek();
      if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c)))
        break;
      e.atom.push_back(c);
      advance();
    }
    return e;
  }
};

} // namespace

std::vector<Sexpr> read_sexprs(const std::string& text) {
  Reader r(text);
  std::vector<Sexpr> out;
  for (;;) {
    r.skip_space();
    if (r.done()) break;
    out.push_back(r.read());
  }
  return out;
}

Sexpr read_sexpr(const std::string& text) {
  std::vector<Sexpr> all = read_sexprs(text);
  if (all.size() != 1)
    throw ParseError("expected exactly one expression", 1, 1);
  return all[0];
}

} // namespace gpk
