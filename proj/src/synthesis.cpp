#include "gpk/synthesis.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <atomic>
#include <cmath>
#include <exception>

#include "gpk/error.hpp"

namespace gpk {

namespace {

// One simulation step at the element sitting at global order position k.
// The element is present in the view exactly when it is the view's least
// element: deconstructions consume their context and may remove later
// elements, never earlier ones.
struct StepOutcome {
  bool valid = false;
  Polynomial factor;
  OrderedStructure next;
};

StepOutcome apply_rule(const RecursiveDefinition& def, const OrderedStructure& view,
                       int rule_index, const EvalLimits& limits) {
  StepOutcome out;
  const GuardedDeconstruction& rule = def.rules[static_cast<size_t>(rule_index)];
  std::vector<int> pos = view.positions();
  Evaluator ev(view.s, &pos);
  Assignment a;
  a.consts[def.context_param] = view.order[0];
  if (!ev.eval(*rule.guard, a)) return out;
  Assignment ca = a;
  out.factor = eval_poly(*rule.coeff, ev, ca, limits);
  out.next = transduce(rule.scheme, view, a.consts);
  out.valid = true;
  return out;
}

} // namespace

std::optional<Polynomial> simulate_coloring(const RecursiveDefinition& def,
                                            const OrderedStructure& m,
                                            const std::vector<int>& colors,
                                            const EvalLimits& limits) {
  m.validate();
  const int n = m.s.size();
  if (static_cast<int>(colors.size()) != n)
    throw Error("coloring length " + std::to_string(colors.size()) + " does not match universe " +
                std::to_string(n));
  const int rules = static_cast<int>(def.rules.size());
  OrderedStructure view = m;
  Polynomial factors = Polynomial::constant(1);
  for (int k = 0; k < n; ++k) {
    const std::string& id = m.s.universe[static_cast<size_t>(m.order[static_cast<size_t>(k)])];
    int color = colors[static_cast<size_t>(k)];
    if (color < 0 || color > rules)
      throw Error("color " + std::to_string(color) + " out of range at element " + id);
    bool present = view.s.index_of(id) >= 0;
    if (!present) {
      if (color != 0) return std::nullopt;
      continue;
    }
    if (color == 0) return std::nullopt;
    StepOutcome step = apply_rule(def, view, color - 1, limits);
    if (!step.valid) return std::nullopt;
    factors *= step.factor;
    view = std::move(step.next);
  }
  return factors * def.empty_value;
}

namespace {

void synth_dfs(const RecursiveDefinition& def, const OrderedStructure& m, int k,
               const OrderedStructure& view, const Polynomial& factors,
               std::vector<int>& colors, const EvalLimits& limits, bool keep_records,
               SynthesisResult& out) {
  const int n = m.s.size();
  if (k == n) {
    Polynomial contribution = factors * def.empty_value;
    out.value += contribution;
    out.colorings += 1;
    if (keep_records) out.records.push_back({colors, std::move(contribution)});
    return;
  }
  const std::string& id = m.s.universe[static_cast<size_t>(m.order[static_cast<size_t>(k)])];
  if (view.s.index_of(id) < 0) {
    colors[static_cast<size_t>(k)] = 0;
    synth_dfs(def, m, k + 1, view, factors, colors, limits, keep_records, out);
    return;
  }
  for (int r = 0; r < static_cast<int>(def.rules.size()); ++r) {
    StepOutcome step = apply_rule(def, view, r, limits);
    if (!step.valid) continue;
    colors[static_cast<size_t>(k)] = r + 1;
    synth_dfs(def, m, k + 1, step.next, factors * step.factor, colors, limits, keep_records, out);
  }
}

} // namespace

SynthesisResult synthesize_serial(const RecursiveDefinition& def, const OrderedStructure& m,
                                  const EvalLimits& limits, bool keep_records) {
  m.validate();
  SynthesisResult out;
  std::vector<int> colors(static_cast<size_t>(m.s.size()), 0);
  synth_dfs(def, m, 0, m, Polynomial::constant(1), colors, limits, keep_records, out);
  return out;
}

SynthesisResult synthesize_parallel(const RecursiveDefinition& def, const OrderedStructure& m,
                                    const EvalLimits& limits) {
  m.validate();
  const int n = m.s.size();
  const uint64_t base = static_cast<uint64_t>(def.rules.size()) + 1;
  // base^n enumeration indices; digit k colors the element at position k.
  double bits = n * std::log2(static_cast<double>(base));
  if (bits > 40)
    throw BudgetError("coloring space of " + std::to_string(n) + " elements over " +
                      std::to_string(base) + " colors is out of reach");
  uint64_t total = 1;
  for (int k = 0; k < n; ++k) total *= base;

  SynthesisResult out;
#ifdef _OPENMP
  // Exceptions must not unwind out of the parallel region; the first one is
  // parked and rethrown after the join.
  std::exception_ptr failure = nullptr;
  std::atomic<bool> failed{false};
#pragma omp parallel
  {
    SynthesisResult local;
    std::vector<int> colors(static_cast<size_t>(n));
#pragma omp for schedule(dynamic, 64)
    for (int64_t code = 0; code < static_cast<int64_t>(total); ++code) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        uint64_t rest = static_cast<uint64_t>(code);
        for (int k = 0; k < n; ++k) {
          colors[static_cast<size_t>(k)] = static_cast<int>(rest % base);
          rest /= base;
        }
        auto contribution = simulate_coloring(def, m, colors, limits);
        if (!contribution) continue;
        local.value += *contribution;
        local.colorings += 1;
      } catch (...) {
#pragma omp critical(gpk_synth_failure)
        if (!failed.load(std::memory_order_relaxed)) {
          failure = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    }
#pragma omp critical(gpk_synth_merge)
    {
      out.value += local.value;
      out.colorings += local.colorings;
    }
  }
  if (failure) std::rethrow_exception(failure);
#else
  std::vector<int> colors(static_cast<size_t>(n));
  for (uint64_t code = 0; code < total; ++code) {
    uint64_t rest = code;
    for (int k = 0; k < n; ++k) {
      colors[static_cast<size_t>(k)] = static_cast<int>(rest % base);
      rest /= base;
    }
    auto contribution = simulate_coloring(def, m, colors, limits);
    if (!contribution) continue;
    out.value += *contribution;
    out.colorings += 1;
  }
#endif
  return out;
}

SynthesisCheck check_synthesis(const RecursiveDefinition& def, const OrderedStructure& m,
                               const EvalLimits& limits) {
  SynthesisCheck chk;
  SynthesisResult syn = synthesize_serial(def, m, limits);
  RecursiveEvaluator rec(def, limits);
  chk.synthesized = syn.value;
  chk.recursive = rec.evaluate(m);
  chk.colorings = syn.colorings;
  chk.leaves = rec.leaf_count(m);
  if (!(chk.synthesized == chk.recursive))
    chk.detail = "value mismatch: synthesized " + chk.synthesized.to_text() + " vs recursive " +
                 chk.recursive.to_text();
  else if (chk.colorings != chk.leaves)
    chk.detail = "count mismatch: " + chk.colorings.str() + " colorings vs " + chk.leaves.str() +
                 " leaves";
  chk.agree = chk.detail.empty();
  return chk;
}

} // namespace gpk
