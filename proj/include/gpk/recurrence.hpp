#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpk/polyexpr.hpp"
#include "gpk/structure.hpp"
#include "gpk/translation.hpp"

namespace gpk {

// One deconstruction row: when the guard holds at the context element, the
// scheme rewrites the structure and the coefficient scales the recursive
// value. Guard and coefficient see the context as a constant.
struct GuardedDeconstruction {
  std::string name;
  FormulaPtr guard;
  TranslationScheme scheme;
  PolyExprPtr coeff;
};

// Order-driven recursive definition of a structure invariant with values in
// a polynomial ring. Evaluation walks the order from its least element.
struct RecursiveDefinition {
  std::string name;
  VocabTag vocab = VocabTag::graph2;
  int context_arity = 1;
  std::string context_param = "c";
  FormulaPtr order_constraint;  // admissibility sentence for the order
  std::vector<GuardedDeconstruction> rules;
  Polynomial empty_value = Polynomial::constant(1);
};

struct EvalStats {
  uint64_t calls = 0;
  uint64_t memo_hits = 0;
  uint64_t branches = 0;
};

// Memoizing evaluator. The memo key is the canonical serialization of the
// structure together with its order, so distinct sub-derivations that reach
// the same ordered substructure share work while leaf counts still reflect
// the full recursion tree.
class RecursiveEvaluator {
 public:
  explicit RecursiveEvaluator(const RecursiveDefinition& def, EvalLimits limits = {});

  // Throws InfeasibleOrderError when no rule applies at a reachable context.
  Polynomial evaluate(const OrderedStructure& m);
  // Number of leaves of the (unshared) recursion tree.
  BigInt leaf_count(const OrderedStructure& m);

  void set_deadline(std::chrono::steady_clock::time_point t) { deadline_ = t; }
  const EvalStats& stats() const { return stats_; }

 private:
  const RecursiveDefinition& def_;
  EvalLimits limits_;
  EvalStats stats_;
  std::map<std::string, std::pair<Polynomial, BigInt>> memo_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;

  const std::pair<Polynomial, BigInt>& run(const OrderedStructure& m);
};

// Does the order satisfy the definition's admissibility sentence?
bool check_order_valid(const RecursiveDefinition& def, const OrderedStructure& m);

// Names of rules whose guards hold at the least element.
std::vector<std::string> enabled_rules(const RecursiveDefinition& def,
                                       const OrderedStructure& m);

// All admissible orders, by filtering every permutation of the universe.
// Throws when the universe has more than `max_elements` elements (the
// filter is factorial).
std::vector<std::vector<int>> all_valid_orders(const RecursiveDefinition& def,
                                               const IncidenceStructure& s,
                                               int max_elements = 8);

// Rejection sampling: shuffle until the admissibility sentence holds.
std::vector<int> random_valid_order(const RecursiveDefinition& def,
                                    const IncidenceStructure& s, uint64_t seed);

struct InvarianceReport {
  bool agree = true;
  Polynomial value;          // value under the first order
  size_t orders_checked = 0;
  std::string mismatch_detail;  // empty when agree
};

// Evaluate under every order given and compare the polynomials.
InvarianceReport check_order_invariance(const RecursiveDefinition& def,
                                        const IncidenceStructure& s,
                                        const std::vector<std::vector<int>>& orders,
                                        const EvalLimits& limits = {});

} // namespace gpk
