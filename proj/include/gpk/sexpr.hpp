#pragma once

#include <string>
#include <vector>

namespace gpk {

// Minimal s-expression reader for the definition language. Atoms are runs of
// characters other than whitespace, parentheses and ';'. A ';' starts a
// comment running to end of line. Positions are 1-based.
struct Sexpr {
  enum class Kind { atom, list };
  Kind kind = Kind::atom;
  std::string atom;
  std::vector<Sexpr> items;
  int line = 0, col = 0;

  bool is_atom(const std::string& s) const { return kind == Kind::atom && atom == s; }
  bool is_list() const { return kind == Kind::list; }
  // list whose first item is the given atom
  bool is_form(const std::string& head) const {
    return is_list() && !items.empty() && items[0].is_atom(head);
  }
};

std::vector<Sexpr> read_sexprs(const std::string& text);
Sexpr read_sexpr(const std::string& text);  // exactly one expression

} // namespace gpk
