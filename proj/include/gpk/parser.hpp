#pragma once

#include <map>
#include <string>
#include <vector>

#include "gpk/formula.hpp"
#include "gpk/polyexpr.hpp"
#include "gpk/recurrence.hpp"
#include "gpk/sexpr.hpp"
#include "gpk/translation.hpp"

namespace gpk {

// Named formula templates available to (call NAME term...) forms.
struct ParseCtx {
  std::map<std::string, std::pair<std::vector<std::string>, FormulaPtr>> formula_macros;
};

// Terms: a bare atom is a variable, an @-prefixed atom a constant.
Term parse_term(const Sexpr& e);

SetExpr parse_set(const Sexpr& e);

// Formula grammar:
//   true | false
//   (= t t) (rel SYM t...) (rvar V t...)
//   (native NAME set... term...)
//   (not f) (and f...) (or f...) (implies f f)
//   (exists v f) (forall v f)            v may be a list of variables
//   (existsR V arity f) (forallR V arity f)
//   (exists-exactly k v f)
//   (in t set) (subset set set)          membership sugar, expanded here
//   (call NAME t...)                     template instantiation
FormulaPtr parse_formula(const Sexpr& e, const ParseCtx& ctx = {});
FormulaPtr parse_formula_text(const std::string& text, const ParseCtx& ctx = {});

// Expression grammar:
//   (const COEFF-AND-MONOMIAL-TOKENS...)
//   (tv f) (prod e...) (sum e...)
//   (prod-over (v...) guard e) (sum-over (v...) guard e)
//   (sum-rel ((A arity)...) guard e)
//   (card-power X (v...) guard) (card-factorial v guard) (falling-power X v guard)
PolyExprPtr parse_poly_expr(const Sexpr& e, const ParseCtx& ctx = {});
PolyExprPtr parse_poly_expr_text(const std::string& text, const ParseCtx& ctx = {});

// (scheme NAME (source VOCAB) (target VOCAB) (params @c...)
//              (domain (y) f) (relation SYM (vars...) f)...)
TranslationScheme parse_scheme(const Sexpr& e, const ParseCtx& ctx = {});

// (recursive-definition NAME (vocabulary VOCAB) (context @c) (order f)
//    [(empty-value tokens...)]
//    (rule NAME (guard f) (scheme (domain ...) (relation ...)...) (coeff e))...)
RecursiveDefinition parse_recursive_definition(const Sexpr& e, const ParseCtx& ctx = {});

// A definition file is a sequence of top-level forms:
//   (define-formula NAME (args...) f)
//   (define-poly NAME e)
//   (define-scheme NAME ...)      same body as (scheme ...)
//   (recursive-definition ...)
struct DefFile {
  ParseCtx macros;
  std::map<std::string, PolyExprPtr> polys;
  std::map<std::string, TranslationScheme> schemes;
  std::vector<RecursiveDefinition> definitions;
};

DefFile parse_def_file(const std::string& text);

} // namespace gpk
