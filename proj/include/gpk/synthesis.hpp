#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpk/recurrence.hpp"

namespace gpk {

// Marker colorings: each universe element is assigned the rule applied when
// it headed the recursion (1..rule count) or 0 when an earlier step had
// already removed it. Valid colorings correspond one-to-one to the branches
// of the deconstruction tree, so summing their monomial contributions
// reproduces the recursive value and counting them reproduces the leaf
// count. Colors are listed in order positions, not universe indices.
struct ColoringRecord {
  std::vector<int> colors;
  Polynomial contribution;
};

struct SynthesisResult {
  Polynomial value;
  BigInt colorings = 0;
  std::vector<ColoringRecord> records;  // filled only on request
};

// Replay one coloring against the definition. Returns its contribution, or
// nothing when the coloring is invalid: a removed element colored by a rule,
// a surviving element colored 0, or a rule whose guard fails at its turn.
std::optional<Polynomial> simulate_coloring(const RecursiveDefinition& def,
                                            const OrderedStructure& m,
                                            const std::vector<int>& colors,
                                            const EvalLimits& limits = {});

// Depth-first enumeration that abandons invalid prefixes; the reference
// implementation. Work is proportional to the deconstruction tree.
SynthesisResult synthesize_serial(const RecursiveDefinition& def, const OrderedStructure& m,
                                  const EvalLimits& limits = {}, bool keep_records = false);

// Flat enumeration of all (rules+1)^n colorings, split across threads; each
// coloring is simulated independently. Same value and count as the serial
// path, exponentially more work, embarrassingly parallel.
SynthesisResult synthesize_parallel(const RecursiveDefinition& def, const OrderedStructure& m,
                                    const EvalLimits& limits = {});

struct SynthesisCheck {
  bool agree = true;
  Polynomial synthesized;
  Polynomial recursive;
  BigInt colorings = 0;
  BigInt leaves = 0;
  std::string detail;  // empty when agree
};

// Synthesized expansion versus recursive evaluation on one instance: values
// must match and valid colorings must count the tree's leaves.
SynthesisCheck check_synthesis(const RecursiveDefinition& def, const OrderedStructure& m,
                               const EvalLimits& limits = {});

} // namespace gpk
