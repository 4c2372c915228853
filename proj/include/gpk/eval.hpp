#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gpk/formula.hpp"
#include "gpk/natives.hpp"
#include "gpk/structure.hpp"

namespace gpk {

// Variable bindings for one evaluation. fo/so act as stacks: lookups scan
// from the back so inner binders shadow outer ones.
struct Assignment {
  std::vector<std::pair<std::string, int>> fo;
  std::vector<std::pair<std::string, Relation>> so;
  std::map<std::string, int> consts;
};

// Model checker over an incidence structure. The symbols PV, PE and O are
// built in: sort tests and the linear order. O needs position data, as do
// before-sets and the last-in-component predicate; constructing without
// positions leaves those forms unavailable (they throw).
class Evaluator {
 public:
  explicit Evaluator(const IncidenceStructure& s,
                     const std::vector<int>* positions = nullptr);

  bool eval(const Formula& f, Assignment& a) const;
  ElemMask eval_set(const SetExpr& e, Assignment& a) const;
  int resolve(const Term& t, const Assignment& a) const;

  const IncidenceStructure& structure() const { return *s_; }

  // Relation enumeration order for second-order quantifiers: binary counter
  // from the empty relation, bit i = i-th tuple in row-major index order.
  static bool next_relation(Relation& r);

 private:
  const IncidenceStructure* s_;
  const std::vector<int>* pos_;
  int n_;

  int position_of(int elem) const;
};

// Convenience wrapper for sentences.
bool models(const IncidenceStructure& s, const Formula& f,
            const std::vector<int>* positions = nullptr,
            const std::map<std::string, int>& consts = {});

} // namespace gpk
