#include "gpk/polyexpr.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gpk/error.hpp"

namespace gpk {

namespace {

PolyExprPtr make(PolyExpr e) { return std::make_shared<const PolyExpr>(std::move(e)); }

} // namespace

PolyExprPtr pe_const(Polynomial p) {
  PolyExpr e;
  e.kind = PolyExpr::Kind::constant;
  e.value = std::move(p);
  return make(std::move(e));
}

PolyExprPtr pe_const(long long n) { return pe_const(Polynomial::constant(n)); }

PolyExprPtr pe_tv(FormulaPtr guard) {
  PolyExpr e;
  e.kind = PolyExpr::Kind::truth_value;
  e.guard = std::move(guard);
  return make(std::move(e));
}

PolyExprPtr pe_product(std::vector<PolyExprPtr> factors) {
  PolyExpr e;
  e.kind = PolyExpr::Kind::product;
  e.children = std::move(factors);
  return make(std::move(e));
}

PolyExprPtr pe_sum(std::vector<PolyExprPtr> summands) {
  PolyExpr e;
  e.kind = PolyExpr::Kind::sum;
  e.children = std::move(summands);
  return make(std::move(e));
}

PolyExprPtr pe_guarded_product(std::vector<std::string> vars, FormulaPtr guard,
                               PolyExprPtr body) {
  PolyExpr e;
  e.kind = PolyExpr::Kind::guarded_product;
  e.vars = std::move(vars);
  e.guard = std::move(guard);
  e.children = {std::move(body)};
  return make(std::move(e));
}

PolyExprPtr pe_small_sum(std::vector<std::string> vars, FormulaPtr guard,
                         PolyExprPtr body) {
  PolyExpr e;
  e.kind = PolyExpr::Kind::small_sum;
  e.vars = std::move(vars);
  e.guard = std::move(guard);
  e.children = {std::move(body)};
  return make(std::move(e));
}

PolyExprPtr pe_large_sum(std::vector<std::pair<std::string, int>> rel_vars,
                         FormulaPtr guard, PolyExprPtr body) {
  PolyExpr e;
  e.kind = PolyExpr::Kind::large_sum;
  e.rel_vars = std::move(rel_vars);
  e.guard = std::move(guard);
  e.children = {std::move(body)};
  return make(std::move(e));
}

PolyExprPtr pe_card_power(const std::string& indeterminate,
                          std::vector<std::string> vars, FormulaPtr guard) {
  return pe_guarded_product(std::move(vars), std::move(guard),
                            pe_const(Polynomial::variable(indeterminate)));
}

namespace {

// Σ over earlier satisfiers of the same guard, used by the factorial and
// falling-power builders. "Earlier" is by the structure order.
PolyExprPtr earlier_satisfier_count(const std::string& var, const FormulaPtr& guard) {
  std::string w = var + "$f";
  FormulaPtr shifted = substitute(guard, {{var, tvar(w)}});
  FormulaPtr inner = f_and(shifted, f_rel("O", {tvar(w), tvar(var)}));
  return pe_small_sum({w}, inner, pe_const(1));
}

} // namespace

PolyExprPtr pe_card_factorial(const std::string& var, FormulaPtr guard) {
  PolyExprPtr body =
      pe_sum({pe_const(1), earlier_satisfier_count(var, guard)});
  return pe_guarded_product({var}, std::move(guard), std::move(body));
}

PolyExprPtr pe_falling_power(const std::string& indeterminate,
                             const std::string& var, FormulaPtr guard) {
  PolyExprPtr body = pe_sum(
      {pe_const(Polynomial::variable(indeterminate)),
       pe_product({pe_const(-1), earlier_satisfier_count(var, guard)})});
  return pe_guarded_product({var}, std::move(guard), std::move(body));
}

void validate_poly_expr(const PolyExpr& e) {
  switch (e.kind) {
    case PolyExpr::Kind::constant:
      return;
    case PolyExpr::Kind::truth_value:
      if (!e.guard) throw Error("truth value without a formula");
      return;
    case PolyExpr::Kind::product:
    case PolyExpr::Kind::sum:
      for (const auto& c : e.children) validate_poly_expr(*c);
      return;
    case PolyExpr::Kind::guarded_product:
    case PolyExpr::Kind::small_sum: {
      if (e.vars.empty()) throw Error("guarded range without binders");
      std::set<std::string> seen(e.vars.begin(), e.vars.end());
      if (seen.size() != e.vars.size()) throw Error("duplicate binder in guarded range");
      if (!e.guard || e.children.size() != 1) throw Error("malformed guarded range");
      validate_poly_expr(*e.children[0]);
      return;
    }
    case PolyExpr::Kind::large_sum: {
      if (e.rel_vars.empty()) throw Error("relation sum without binders");
      std::set<std::string> seen;
      for (const auto& [name, arity] : e.rel_vars) {
        if (arity < 1) throw Error("relation binder with non-positive arity");
        if (!seen.insert(name).second) throw Error("duplicate relation binder");
      }
      if (!e.guard || e.children.size() != 1) throw Error("malformed relation sum");
      validate_poly_expr(*e.children[0]);
      return;
    }
  }
  throw Error("unhandled expression kind");
}

namespace {

size_t large_sum_space_bits(const PolyExpr& e, int n, const EvalLimits& limits) {
  size_t total = 0;
  for (const auto& [name, arity] : e.rel_vars) {
    if (arity > limits.max_large_sum_arity)
      throw Error("relation sum binder " + name + " exceeds the arity cap");
    size_t sp = 1;
    for (int i = 0; i < arity; ++i) sp *= (size_t)n;
    total += sp;
  }
  if (total > limits.max_space_bits)
    throw BudgetError("relation sum search space too large");
  return total;
}

} // namespace

Polynomial eval_poly(const PolyExpr& e, const Evaluator& ev, Assignment& a,
                     const EvalLimits& limits) {
  int n = (int)ev.structure().universe.size();
  switch (e.kind) {
    case PolyExpr::Kind::constant:
      return e.value;
    case PolyExpr::Kind::truth_value:
      return Polynomial::constant(ev.eval(*e.guard, a) ? 1 : 0);
    case PolyExpr::Kind::product: {
      Polynomial p = Polynomial::constant(1);
      for (const auto& c : e.children) {
        p = p * eval_poly(*c, ev, a, limits);
        if (p.is_zero()) break;
      }
      return p;
    }
    case PolyExpr::Kind::sum: {
      Polynomial p;
      for (const auto& c : e.children) p += eval_poly(*c, ev, a, limits);
      return p;
    }
    case PolyExpr::Kind::guarded_product:
    case PolyExpr::Kind::small_sum: {
      bool is_product = e.kind == PolyExpr::Kind::guarded_product;
      size_t base = a.fo.size();
      for (const auto& v : e.vars) a.fo.emplace_back(v, 0);
      Polynomial acc = Polynomial::constant(is_product ? 1 : 0);
      std::vector<int> odo(e.vars.size(), 0);
      bool done = n == 0 && !e.vars.empty();
      while (!done) {
        for (size_t i = 0; i < odo.size(); ++i) a.fo[base + i].second = odo[i];
        if (ev.eval(*e.guard, a)) {
          Polynomial body = eval_poly(*e.children[0], ev, a, limits);
          if (is_product) {
            acc = acc * body;
            if (acc.is_zero()) break;
          } else {
            acc += body;
          }
        }
        size_t i = odo.size();
        while (i > 0) {
          --i;
          if (++odo[i] < n) break;
          odo[i] = 0;
          if (i == 0) done = true;
        }
        if (odo.empty()) done = true;
      }
      a.fo.resize(base);
      return acc;
    }
    case PolyExpr::Kind::large_sum: {
      large_sum_space_bits(e, n, limits);
      size_t base = a.so.size();
      for (const auto& [name, arity] : e.rel_vars)
        a.so.emplace_back(name, Relation(arity, n));
      Polynomial acc;
      bool done = false;
      while (!done) {
        if (ev.eval(*e.guard, a)) acc += eval_poly(*e.children[0], ev, a, limits);
        size_t i = e.rel_vars.size();
        done = true;
        while (i > 0) {
          --i;
          if (Evaluator::next_relation(a.so[base + i].second)) { done = false; break; }
        }
      }
      a.so.resize(base);
      return acc;
    }
  }
  throw Error("unhandled expression kind");
}

Polynomial eval_poly_parallel(const PolyExpr& e, const Evaluator& ev,
                              const Assignment& a, const EvalLimits& limits) {
  if (e.kind != PolyExpr::Kind::large_sum) {
    Assignment local = a;
    return eval_poly(e, ev, local, limits);
  }
  int n = (int)ev.structure().universe.size();
  size_t bits = large_sum_space_bits(e, n, limits);
  if (bits >= 63) throw BudgetError("relation sum search space too large");
  long long total = 1ll << bits;

  Polynomial result;
  // Exceptions must not unwind out of the parallel region; the first one is
  // parked and rethrown after the join.
  std::exception_ptr failure = nullptr;
  std::atomic<bool> failed{false};
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    Assignment local = a;
    size_t base = local.so.size();
    for (const auto& [name, arity] : e.rel_vars)
      local.so.emplace_back(name, Relation(arity, n));
    Polynomial acc;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (long long idx = 0; idx < total; ++idx) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        // unpack the flat index into the binder relations, binder 0 in the
        // low bits, matching the serial enumeration order
        size_t off = 0;
        for (size_t b = 0; b < e.rel_vars.size(); ++b) {
          Relation& r = local.so[base + b].second;
          for (size_t j = 0; j < r.space(); ++j)
            r.set_bit(j, (idx >> (off + j)) & 1);
          off += r.space();
        }
        if (ev.eval(*e.guard, local))
          acc += eval_poly(*e.children[0], ev, local, limits);
      } catch (...) {
#ifdef _OPENMP
#pragma omp critical(gpk_large_sum_failure)
#endif
        if (!failed.load(std::memory_order_relaxed)) {
          failure = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    }
#ifdef _OPENMP
#pragma omp critical(gpk_large_sum_merge)
#endif
    result += acc;
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

Polynomial eval_poly_on(const PolyExpr& e, const IncidenceStructure& s,
                        const std::vector<int>* positions,
                        const std::map<std::string, int>& consts,
                        const EvalLimits& limits) {
  Evaluator ev(s, positions);
  Assignment a;
  a.consts = consts;
  return eval_poly(e, ev, a, limits);
}

std::string PolyExpr::to_text() const {
  switch (kind) {
    case Kind::constant:
      return "(const " + value.to_text() + ")";
    case Kind::truth_value:
      return "(tv " + gpk::to_text(*guard) + ")";
    case Kind::product:
    case Kind::sum: {
      std::string out = kind == Kind::product ? "(prod" : "(sum";
      for (const auto& c : children) out += " " + c->to_text();
      return out + ")";
    }
    case Kind::guarded_product:
    case Kind::small_sum: {
      std::string out = kind == Kind::guarded_product ? "(prod-over (" : "(sum-over (";
      for (size_t i = 0; i < vars.size(); ++i) out += std::string(i ? " " : "") + vars[i];
      return out + ") " + gpk::to_text(*guard) + " " + children[0]->to_text() + ")";
    }
    case Kind::large_sum: {
      std::string out = "(sum-rel (";
      for (size_t i = 0; i < rel_vars.size(); ++i) {
        if (i) out += " ";
        out += "(" + rel_vars[i].first + " " + std::to_string(rel_vars[i].second) + ")";
      }
      return out + ") " + gpk::to_text(*guard) + " " + children[0]->to_text() + ")";
    }
  }
  throw Error("unhandled expression kind");
}

} // namespace gpk
