#pragma once

#include <map>
#include <string>
#include <vector>

#include "gpk/formula.hpp"
#include "gpk/structure.hpp"

namespace gpk {

// A (scalar, relativizing) interpretation of target-vocabulary structures
// inside source-vocabulary ones: a domain formula picking the surviving
// elements plus one defining formula per target relation symbol. PV, PE and
// O count as definable symbols here. Constants listed in params must be
// bound when the scheme is applied.
struct TranslationScheme {
  struct RelClause {
    std::string symbol;
    std::vector<std::string> vars;
    FormulaPtr body;
  };

  std::string name;
  VocabTag source = VocabTag::graph2;
  VocabTag target = VocabTag::graph2;
  std::vector<std::string> params;
  std::string domain_var;
  FormulaPtr domain;
  std::vector<RelClause> relations;

  const RelClause* find(const std::string& symbol) const;
  // domain formula with its variable replaced by t
  FormulaPtr domain_at(const Term& t) const;
  std::string to_text() const;
};

// Apply the scheme to an ordered structure: keep the elements satisfying the
// domain formula, populate the target relations from their defining
// formulas. Kinds come from PV/PE clauses when given (must then partition the
// kept elements) and are inherited otherwise; likewise the order comes from
// an O clause when given (must define a strict linear order) and is induced
// from the source order otherwise.
OrderedStructure transduce(const TranslationScheme& sch, const OrderedStructure& m,
                           const std::map<std::string, int>& consts = {});

// Rewrite a target-vocabulary formula into a source-vocabulary one such that
// the source structure satisfies the result exactly when the transduced
// structure satisfies the input. Equality atoms pick up domain conjuncts,
// first-order quantifiers relativize to the domain, second-order quantifiers
// get a closure conjunct confining the relation to domain tuples. Native
// predicates are not translatable.
FormulaPtr translate(const TranslationScheme& sch, const FormulaPtr& f);

// Scheme whose application equals applying `first` then `second`. Defining
// formulas are pulled back through `first` and explicitly relativized to its
// domain, free variables included.
TranslationScheme compose(const TranslationScheme& first,
                          const TranslationScheme& second);

// Largest quantifier rank among the scheme's formulas.
int scheme_quantifier_rank(const TranslationScheme& sch);

// Provable ceiling for the rank of translate(sch, f): rank of f plus rank of
// the scheme, plus the largest second-order binder arity in f (its closure
// conjunct spends that many first-order quantifiers).
int translation_rank_bound(const TranslationScheme& sch, const Formula& f);

} // namespace gpk
