#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpk/catalog.hpp"
#include "gpk/corpus.hpp"
#include "gpk/translation.hpp"

namespace gpk {

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;  // counts on success, first failure otherwise
  double seconds = 0.0;
};

// The acceptance battery, one function per criterion; run_all_criteria keeps
// this order. Tolerances live here: polynomial comparisons are exact, the
// only measured quantities are the wall-clock budgets of the two sweep
// criteria (engine agreement, synthesis agreement).
SuiteResult criterion_initial_conditions();
SuiteResult criterion_engine_agreement();
SuiteResult criterion_order_invariance();
SuiteResult criterion_fundamental_property();
SuiteResult criterion_composition();
SuiteResult criterion_synthesis_agreement();
SuiteResult criterion_synthesized_censuses();
SuiteResult criterion_renaming();
SuiteResult criterion_builders();
SuiteResult criterion_native_agreement();
std::vector<SuiteResult> run_all_criteria();

// Reusable pieces for the command line.

struct AgreementReport {
  int instances = 0;
  int mismatches = 0;
  std::string first_mismatch;  // smallest corpus index, deterministic
};

// recursive = expansion = oracle on every corpus graph, parallel across
// instances. budget_ms > 0 arms a wall-clock cap; overrunning it throws
// BudgetError. Engine exceptions count as mismatches with the message in
// the detail.
AgreementReport check_entry_agreement(const CatalogEntry& entry,
                                      const std::vector<MultiGraph>& corpus,
                                      int64_t budget_ms = 0);

// Fixed pools for the fundamental-property suite.
const std::vector<TranslationScheme>& suite_schemes();
const std::vector<FormulaPtr>& suite_formulas();

// Raw two-sorted structures with at most max_elements universe elements:
// every kind assignment and every incidence subset, well-formed or not. The
// fundamental property quantifies over all of them.
std::vector<IncidenceStructure> all_raw_structures(int max_elements);

struct PropertyReport {
  int checked = 0;
  int failures = 0;
  std::string first_failure;
};

// Does M satisfy the rewritten sentence exactly when the transduced
// structure satisfies the original? Exhaustive over structures x the two
// pools, or seeded random triples.
PropertyReport fundamental_exhaustive(int max_elements);
PropertyReport fundamental_random(int trials, int max_size, uint64_t seed);

// transduce(compose(a, b)) versus the two-step transduction,
// element-for-element, on seeded random (scheme, scheme, structure) triples.
PropertyReport composition_random(int trials, uint64_t seed);

} // namespace gpk
