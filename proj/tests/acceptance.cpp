#include <cstdio>
#include <vector>

#include "gpk/suites.hpp"

// Runs the full acceptance battery and prints one verdict line per
// criterion as it completes. Exact polynomial equality throughout; the only
// tolerances are the wall-clock budgets reported with their criteria.
int main() {
  using Criterion = gpk::SuiteResult (*)();
  const std::vector<Criterion> criteria = {
      gpk::criterion_initial_conditions, gpk::criterion_engine_agreement,
      gpk::criterion_order_invariance,   gpk::criterion_fundamental_property,
      gpk::criterion_composition,        gpk::criterion_synthesis_agreement,
      gpk::criterion_synthesized_censuses, gpk::criterion_renaming,
      gpk::criterion_builders,           gpk::criterion_native_agreement};
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    gpk::SuiteResult r = criteria[i]();
    if (!r.pass) ++failed;
    std::printf("criterion %2zu (%s): %s. %s (%.1f s)\n", i + 1,
                r.name.c_str(), r.pass ? "PASS" : "FAIL", r.detail.c_str(),
                r.seconds);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
