#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gpk/eval.hpp"
#include "gpk/formula.hpp"
#include "gpk/polynomial.hpp"

namespace gpk {

struct PolyExpr;
using PolyExprPtr = std::shared_ptr<const PolyExpr>;

// Polynomial-valued expressions over a structure: constants, truth values,
// finite products and sums, guarded products and small sums ranging over
// element tuples, and large sums ranging over relation assignments.
struct PolyExpr {
  enum class Kind {
    constant,
    truth_value,
    product,
    sum,
    guarded_product,  // ∏ over FO tuples satisfying the guard
    small_sum,        // Σ over FO tuples satisfying the guard
    large_sum,        // Σ over relation assignments satisfying the guard
  };

  Kind kind;
  Polynomial value;                                   // constant
  FormulaPtr guard;                                   // truth_value and quantified kinds
  std::vector<std::string> vars;                      // FO binders
  std::vector<std::pair<std::string, int>> rel_vars;  // SO binders with arities
  std::vector<PolyExprPtr> children;                  // factors/summands; body for quantified

  std::string to_text() const;
};

PolyExprPtr pe_const(Polynomial p);
PolyExprPtr pe_const(long long n);
PolyExprPtr pe_tv(FormulaPtr guard);
PolyExprPtr pe_product(std::vector<PolyExprPtr> factors);
PolyExprPtr pe_sum(std::vector<PolyExprPtr> summands);
PolyExprPtr pe_guarded_product(std::vector<std::string> vars, FormulaPtr guard,
                               PolyExprPtr body);
PolyExprPtr pe_small_sum(std::vector<std::string> vars, FormulaPtr guard,
                         PolyExprPtr body);
PolyExprPtr pe_large_sum(std::vector<std::pair<std::string, int>> rel_vars,
                         FormulaPtr guard, PolyExprPtr body);

// Combinatorial builders, all expressed through the kinds above.
// X ^ #{x̄ : guard}
PolyExprPtr pe_card_power(const std::string& indeterminate,
                          std::vector<std::string> vars, FormulaPtr guard);
// (#{x : guard})!  computed as ∏ over satisfiers of (1 + number of earlier
// satisfiers); needs an order on the structure.
PolyExprPtr pe_card_factorial(const std::string& var, FormulaPtr guard);
// falling power X(X-1)...(X-card+1), same earlier-satisfier trick.
PolyExprPtr pe_falling_power(const std::string& indeterminate,
                             const std::string& var, FormulaPtr guard);

struct EvalLimits {
  int max_large_sum_arity = 2;
  size_t max_space_bits = 26;  // total bits across one large sum's binders
};

// Structural checks: binder lists nonempty and duplicate-free, child counts
// right, large-sum arities positive. Throws on violation.
void validate_poly_expr(const PolyExpr& e);

Polynomial eval_poly(const PolyExpr& e, const Evaluator& ev, Assignment& a,
                     const EvalLimits& limits = {});

// Parallel variant: splits the outermost large-sum space across threads.
// Falls back to the serial path for everything else.
Polynomial eval_poly_parallel(const PolyExpr& e, const Evaluator& ev,
                              const Assignment& a, const EvalLimits& limits = {});

Polynomial eval_poly_on(const PolyExpr& e, const IncidenceStructure& s,
                        const std::vector<int>* positions = nullptr,
                        const std::map<std::string, int>& consts = {},
                        const EvalLimits& limits = {});

} // namespace gpk
