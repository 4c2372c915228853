#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpk/multigraph.hpp"
#include "gpk/parser.hpp"
#include "gpk/polyexpr.hpp"
#include "gpk/recurrence.hpp"

namespace gpk {

// One named graph polynomial in up to three independent forms: a recursive
// definition, a subset-expansion expression, and a direct combinatorial
// oracle written against the multigraph (no logic machinery). noble-welsh
// has no recursion and its expansion depends on the universe size, so both
// fields stay empty there and the builder below fills the gap.
struct CatalogEntry {
  std::string name;
  VocabTag vocab = VocabTag::graph2;
  bool directed = false;
  std::vector<std::string> indeterminates;  // "X<i>" stands for an indexed family
  std::optional<RecursiveDefinition> recursion;
  PolyExprPtr expansion;
  ParseCtx macros;
  std::function<Polynomial(const MultiGraph&)> oracle;
  std::string notes;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_entry(const std::string& name);  // nullptr when absent

// Declaration order with every edge ahead of every vertex; admissible for
// all shipped recursions.
std::vector<int> edges_first_order(const IncidenceStructure& s);
OrderedStructure ordered_incidence(const MultiGraph& g, VocabTag vocab);

// Rank-size expansion for universes whose components have at most
// max_component_size vertices; X<i> carries the count of size-i components.
PolyExprPtr noble_welsh_expansion(int max_component_size, const ParseCtx& macros);

// Evaluate an entry with one engine: recursive | expansion | oracle |
// synthesized. Throws Error when the entry lacks the form, and
// InfeasibleOrderError / BudgetError as the engines do. An explicit order
// (for recursive/synthesized) overrides the edges-first default.
Polynomial eval_entry(const CatalogEntry& entry, const MultiGraph& g,
                      const std::string& engine, const EvalLimits& limits = {},
                      const std::vector<int>* order = nullptr);

// Straight enumeration oracles.
Polynomial oracle_matching(const MultiGraph& g);
// Spanning-forest census with edge activities read off the given edge order
// (a permutation of edge indices, earliest first). The one-argument form
// uses declaration order; the value is order-independent.
Polynomial oracle_tutte(const MultiGraph& g, const std::vector<int>& edge_order);
Polynomial oracle_tutte(const MultiGraph& g);
Polynomial oracle_potts(const MultiGraph& g);
Polynomial oracle_xi(const MultiGraph& g);
Polynomial oracle_cover(const MultiGraph& g);
// Σ over edge subsets A of y^(|A|-rank(A)) ∏_i X<i>^(number of components
// of (V,A) with exactly i vertices).
Polynomial oracle_noble_welsh(const MultiGraph& g);
// The same census computed with the index family pushed through sigma:
// position i contributes X<sigma(i)> raised to the count of components of
// size sigma(i). Indices outside sigma map to themselves.
Polynomial oracle_noble_welsh_renamed(const MultiGraph& g,
                                      const std::map<int, int>& sigma,
                                      const std::string& y_name = "y");

// Simultaneous indeterminate renaming on a value / an expression / a
// recursive definition's coefficients.
Polynomial rename_vars(const Polynomial& p,
                       const std::vector<std::pair<std::string, std::string>>& renames);
PolyExprPtr rename_poly_expr(const PolyExprPtr& e,
                             const std::vector<std::pair<std::string, std::string>>& renames);
RecursiveDefinition rename_definition(const RecursiveDefinition& def,
                                      const std::vector<std::pair<std::string, std::string>>& renames);

// Does computing the entry with renamed indeterminates give the rename of
// the original value? For indexed families the renamed computation moves the
// exponent attachment along with the name, which is what breaks noble-welsh.
// Throws when the rename map is not injective.
bool renaming_invariance_test(const CatalogEntry& entry, const MultiGraph& g,
                              const std::vector<std::pair<std::string, std::string>>& renames);

} // namespace gpk
