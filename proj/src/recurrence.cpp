#include "gpk/recurrence.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "gpk/error.hpp"
#include "gpk/eval.hpp"

namespace gpk {

RecursiveEvaluator::RecursiveEvaluator(const RecursiveDefinition& def, EvalLimits limits)
    : def_(def), limits_(limits) {}

const std::pair<Polynomial, BigInt>& RecursiveEvaluator::run(const OrderedStructure& m) {
  ++stats_.calls;
  std::string key = m.s.canonical_key(m.order);
  auto it = memo_.find(key);
  if (it != memo_.end()) {
    ++stats_.memo_hits;
    return it->second;
  }
  if (deadline_ && std::chrono::steady_clock::now() > *deadline_)
    throw BudgetError(def_.name + ": evaluation exceeded its budget");
  if (m.s.size() == 0)
    return memo_.emplace(key, std::make_pair(def_.empty_value, BigInt(1))).first->second;

  int c = m.order[0];
  std::vector<int> pos = m.positions();
  Evaluator ev(m.s, &pos);
  Assignment base;
  base.consts[def_.context_param] = c;

  Polynomial total;
  BigInt leaves = 0;
  bool any = false;
  for (const auto& rule : def_.rules) {
    Assignment a = base;
    if (!ev.eval(*rule.guard, a)) continue;
    any = true;
    Assignment ca = base;
    Polynomial coeff = eval_poly(*rule.coeff, ev, ca, limits_);
    OrderedStructure child = transduce(rule.scheme, m, base.consts);
    if (child.s.index_of(m.s.universe[c]) >= 0)
      throw Error(def_.name + "." + rule.name + " keeps its context element");
    if (auto diag = child.s.check_invariants())
      throw Error(def_.name + "." + rule.name + " produced a malformed structure: " + *diag);
    ++stats_.branches;
    const auto& sub = run(child);
    total += coeff * sub.first;
    leaves += sub.second;
  }
  if (!any)
    throw InfeasibleOrderError(def_.name + ": no deconstruction applies at element " +
                               m.s.universe[c]);
  return memo_.emplace(key, std::make_pair(std::move(total), std::move(leaves)))
      .first->second;
}

Polynomial RecursiveEvaluator::evaluate(const OrderedStructure& m) {
  m.validate();
  return run(m).first;
}

BigInt RecursiveEvaluator::leaf_count(const OrderedStructure& m) {
  m.validate();
  return run(m).second;
}

bool check_order_valid(const RecursiveDefinition& def, const OrderedStructure& m) {
  m.validate();
  std::vector<int> pos = m.positions();
  return models(m.s, *def.order_constraint, &pos);
}

std::vector<std::string> enabled_rules(const RecursiveDefinition& def,
                                       const OrderedStructure& m) {
  std::vector<std::string> out;
  if (m.s.size() == 0) return out;
  int c = m.order[0];
  std::vector<int> pos = m.positions();
  Evaluator ev(m.s, &pos);
  for (const auto& rule : def.rules) {
    Assignment a;
    a.consts[def.context_param] = c;
    if (ev.eval(*rule.guard, a)) out.push_back(rule.name);
  }
  return out;
}

std::vector<std::vector<int>> all_valid_orders(const RecursiveDefinition& def,
                                               const IncidenceStructure& s,
                                               int max_elements) {
  int n = s.size();
  if (n > max_elements)
    throw Error("universe too large to enumerate every order (" + std::to_string(n) +
                " elements)");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    OrderedStructure m{s, perm, def.context_arity};
    if (check_order_valid(def, m)) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<int> random_valid_order(const RecursiveDefinition& def,
                                    const IncidenceStructure& s, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> perm(s.universe.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (int attempt = 0; attempt < 200000; ++attempt) {
    std::shuffle(perm.begin(), perm.end(), rng);
    OrderedStructure m{s, perm, def.context_arity};
    if (check_order_valid(def, m)) return perm;
  }
  throw InfeasibleOrderError(def.name + ": no admissible order found by sampling");
}

InvarianceReport check_order_invariance(const RecursiveDefinition& def,
                                        const IncidenceStructure& s,
                                        const std::vector<std::vector<int>>& orders,
                                        const EvalLimits& limits) {
  if (orders.empty()) throw Error("no orders to compare");
  RecursiveEvaluator evaluator(def, limits);
  InvarianceReport rep;
  std::vector<int> first_order;
  for (const auto& ord : orders) {
    OrderedStructure m{s, ord, def.context_arity};
    if (!check_order_valid(def, m))
      throw InfeasibleOrderError(def.name + ": inadmissible order supplied");
    Polynomial val = evaluator.evaluate(m);
    ++rep.orders_checked;
    if (rep.orders_checked == 1) {
      rep.value = val;
      first_order = ord;
    } else if (val != rep.value) {
      std::ostringstream os;
      auto show = [&](const std::vector<int>& o) {
        os << "[";
        for (size_t i = 0; i < o.size(); ++i)
          os << (i ? " " : "") << s.universe[static_cast<size_t>(o[i])];
        os << "]";
      };
      os << "order ";
      show(first_order);
      os << " gives " << rep.value.to_text() << " but order ";
      show(ord);
      os << " gives " << val.to_text();
      rep.agree = false;
      rep.mismatch_detail = os.str();
      return rep;
    }
  }
  return rep;
}

} // namespace gpk
